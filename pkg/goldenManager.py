from typing import List, Optional, Tuple, Union
from pathlib import Path
import json

from gridSets import GridParams
from hypergraph import Hypergraph, HypergraphError, dump_hypergraph, edge_diff, format_edge, load_hypergraph


class GoldenManagerError(RuntimeError):
    """Raised for any problem that occurs while loading or saving golden files."""
    pass


DEFAULT_INDEX_PATH = Path(__file__).parent / "goldenIndex.json"


class GoldenManager:
    """
    Manages golden hypergraph files used to pin worked examples.
    Keeps an index of known golden files in a central JSON file and each hypergraph in its own text file.
    """
    def __init__(self, index_path: Optional[Union[str, Path]] = DEFAULT_INDEX_PATH):
        """
        Initialize the GoldenManager.

        Args:
            index_path: Path to the JSON index of golden files. If None, the
                        index is kept in memory only.
        """
        self.index: List[dict] = []
        self.index_path = index_path
        if index_path is not None:
            try:
                self.index = self._read_index(index_path)
            except GoldenManagerError:
                self.index = []

    @staticmethod
    def _read_index(index_path: Union[str, Path]) -> List[dict]:
        path = Path(index_path).expanduser().resolve()
        if not path.is_file():
            raise GoldenManagerError(f"File not found: {path}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise GoldenManagerError(f"Invalid JSON in {path}: {exc}") from exc
        if not isinstance(data, list):
            raise GoldenManagerError(f"Golden index {path} must hold a list")
        return data

    def load(self, golden_path: Union[str, Path], params: GridParams) -> Hypergraph:
        """
        Load a golden hypergraph.

        Raises:
            GoldenManagerError: If the file is missing or not in the edge-per-line format.
        """
        path = Path(str(golden_path).strip()).expanduser().resolve()
        if not path.is_file():
            raise GoldenManagerError(f"File not found: {path}")
        try:
            return load_hypergraph(path.read_text(encoding="utf-8"), params)
        except HypergraphError as exc:
            raise GoldenManagerError(f"Invalid golden file {path}: {exc}") from exc

    def save(self, golden_path: Union[str, Path], h: Hypergraph, name: str = "") -> Path:
        """
        Write ``h`` to ``golden_path`` (UTF-8, LF) and record it in the index.
        """
        path = Path(golden_path).expanduser().resolve()
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(dump_hypergraph(h), encoding="utf-8", newline="\n")
        except OSError as exc:
            raise GoldenManagerError(f"Error saving golden file {path}: {exc}") from exc

        # one entry per path
        p = h.params
        entry = {"name": name or path.stem, "path": str(path),
                 "params": {"d": p.d, "k1": p.k1, "k2": p.k2, "t": p.t}, "edges": len(h)}
        self.index = [item for item in self.index if item.get('path') != str(path)]
        self.index.append(entry)
        self.save_index()
        return path

    def save_index(self) -> None:
        if self.index_path is None:
            return
        path = Path(self.index_path).expanduser().resolve()
        try:
            with open(path, 'w', encoding='utf-8', newline='\n') as f:
                json.dump(self.index, f, indent=2, sort_keys=True)
                f.write("\n")
        except OSError as exc:
            raise GoldenManagerError(f"Error saving golden index {path}: {exc}") from exc

    def resolve(self, name_or_path: Union[str, Path], params: Optional[GridParams] = None) -> Path:
        """
        Find a golden file given either its path or the name it was saved under.

        Raises:
            GoldenManagerError: If nothing matches, or the indexed grid differs from ``params``.
        """
        key = str(name_or_path).strip()
        path = Path(key).expanduser().resolve()
        if path.is_file():
            return path
        for item in self.index:
            if item.get("name") != key:
                continue
            if params is not None and item.get("params") != {"d": params.d, "k1": params.k1,
                                                             "k2": params.k2, "t": params.t}:
                raise GoldenManagerError(f"Golden '{key}' was recorded for {item.get('params')}, not {params.label()}")
            return Path(item["path"])
        raise GoldenManagerError(f"No golden file or index entry named '{key}'")

    def compare(self, h: Hypergraph, golden_path: Union[str, Path]) -> Tuple[List[str], List[str]]:
        """Edges only in ``h`` and only in the golden file, formatted."""
        golden = self.load(golden_path, h.params)
        ours, theirs = edge_diff(h, golden)
        return [format_edge(e) for e in ours], [format_edge(e) for e in theirs]
