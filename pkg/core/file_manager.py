"""Datei-Management: Kantenlisten, Reports und Ausgabepfade"""

import csv
import io
import json
import os
import re
from typing import Any, Dict, List, Optional, Sequence

from core.exceptions import GraphError, GraphFileError
from core.graph import Graph
from utils.logger import log_with_prefix, get_normalized_logger

logger = get_normalized_logger('file_manager')

_NODES_HEADER = re.compile(r"^#\s*nodes\s+(\d+)\s*$", re.IGNORECASE)


class FileManager:
    """Liest und schreibt Kantenlisten sowie JSON/CSV-Reports"""

    def read_graph(self, path: str) -> Graph:
        """Liest eine Kantenliste ("u v" pro Zeile, 0-basiert, '#'-Kommentare)"""
        herkunft = 'file_manager.py'
        if not os.path.isfile(path):
            raise GraphFileError(f"Datei existiert nicht: {path}")
        try:
            with open(path, 'r', encoding='utf-8') as handle:
                text = handle.read()
        except OSError as e:
            raise GraphFileError(f"Datei nicht lesbar: {path}: {e}") from e

        graph = self.parse_edge_list(text, source=path)
        log_with_prefix(logger, 'debug', 'FILES', herkunft, 'Kantenliste gelesen: %s (n=%d, m=%d)',
                        os.path.basename(path), graph.n, graph.num_edges)
        return graph

    def parse_edge_list(self, text: str, source: str = "<text>") -> Graph:
        declared_n: Optional[int] = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith('#'):
                match = _NODES_HEADER.match(line)
                if match:
                    declared_n = int(match.group(1))
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphFileError(f"{source}:{lineno}: erwartet 'u v', gefunden: {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as e:
                raise GraphFileError(f"{source}:{lineno}: keine Ganzzahlen: {line!r}") from e
            if u < 0 or v < 0:
                raise GraphFileError(f"{source}:{lineno}: negative Knoten-ID")
            edges.append((u, v))

        max_id = max((max(u, v) for u, v in edges), default=-1)
        n = declared_n if declared_n is not None else max_id + 1
        if max_id >= n:
            raise GraphFileError(f"{source}: Knoten-ID {max_id} ≥ deklariertem n={n}")
        try:
            return Graph.from_edges(n, edges)
        except GraphError as e:
            raise GraphFileError(f"{source}: {e}") from e

    def format_edge_list(self, graph: Graph) -> str:
        lines = [f"# nodes {graph.n}"]
        lines.extend(f"{u} {v}" for u, v in graph.edges())
        return "\n".join(lines) + "\n"

    def write_graph(self, graph: Graph, path: str) -> str:
        herkunft = 'file_manager.py'
        target = self.prepare_output_path(path)
        self._write_text(target, self.format_edge_list(graph))
        log_with_prefix(logger, 'info', 'FILES', herkunft, '✅ Kantenliste geschrieben: %s', target)
        return target

    def write_json(self, payload: Dict[str, Any], path: str) -> str:
        target = self.prepare_output_path(path)
        self._write_text(target, json.dumps(payload, indent=2, sort_keys=True) + "\n")
        log_with_prefix(logger, 'info', 'FILES', 'file_manager.py', '✅ JSON-Report geschrieben: %s', target)
        return target

    def format_csv(self, rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
        if columns is None:
            columns = list(rows[0].keys()) if rows else []
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, extrasaction='ignore', lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        return buffer.getvalue()

    def write_csv(self, rows: Sequence[Dict[str, Any]], path: str, columns: Optional[List[str]] = None) -> str:
        target = self.prepare_output_path(path)
        self._write_text(target, self.format_csv(rows, columns))
        log_with_prefix(logger, 'info', 'FILES', 'file_manager.py', '✅ CSV-Report geschrieben: %s', target)
        return target

    def prepare_output_path(self, path: str) -> str:
        """Normalisiert den Ausgabepfad und legt fehlende Verzeichnisse an"""
        if not path:
            raise GraphFileError("Leerer Ausgabepfad")
        directory, filename = os.path.split(os.path.normpath(path))
        safe_name = self._sanitize_filename_component(filename)
        if directory:
            try:
                os.makedirs(directory, exist_ok=True)
            except OSError as e:
                raise GraphFileError(f"Ausgabeverzeichnis nicht anlegbar: {directory}: {e}") from e
        return os.path.join(directory, safe_name) if directory else safe_name

    def _sanitize_filename_component(self, component: str) -> str:
        """Bereinigt Dateinamen-Komponenten"""
        if not component:
            return "output"
        safe_component = re.sub(r'[<>:"/\\|?*\x00-\x1f]', '_', component)
        return safe_component[:120]

    def _write_text(self, path: str, text: str) -> None:
        try:
            with open(path, 'w', encoding='utf-8', newline='') as handle:
                handle.write(text)
        except OSError as e:
            raise GraphFileError(f"Datei nicht schreibbar: {path}: {e}") from e
