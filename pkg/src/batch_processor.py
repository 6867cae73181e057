# batch_processor.py - Draw many graph files, one pipeline per file
import os
import sys
import time
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from src.config_loader import get_config
from src.errors import LamanError, PipelineInvariantError
from src.graph_io import load_graph, write_json
from src.pipeline import run_pipeline
from src.svg_export import write_svg

SUMMARY_FILENAME = 'batch_summary.csv'
SUMMARY_COLUMNS = ['file', 'status', 'exit_code', 'n', 'clause', 'error',
                   'width', 'height', 'total_ms', 'output']


def draw_file(graph_path: str, output_folder: Optional[str] = None, svg: bool = False,
              check_stages: Optional[bool] = None) -> Dict:
    """
    Run the full pipeline on one graph file and report a summary row

    Never raises: failures become rows with status 'failed' and the exit
    code the CLI would have returned.
    """
    row = {'file': graph_path, 'status': 'ok', 'exit_code': 0, 'n': None, 'clause': None,
           'error': None, 'width': None, 'height': None, 'total_ms': None, 'output': None}
    start = time.perf_counter()
    try:
        g = load_graph(graph_path)
        row['n'] = g.n
        artifacts = run_pipeline(g, check_stages=check_stages)
        stats = artifacts.stats()
        row['width'], row['height'] = stats.get('width'), stats.get('height')

        if not artifacts.verdict:
            row.update(status='invalid', exit_code=PipelineInvariantError.exit_code, clause=artifacts.verdict.rule,
                       error=artifacts.verdict.message)

        if output_folder:
            stem = Path(graph_path).stem
            out_path = os.path.join(output_folder, f"{stem}.lcontact.json")
            write_json(out_path, artifacts.representation.to_dict())
            row['output'] = out_path
            if svg:
                write_svg(os.path.join(output_folder, f"{stem}.svg"), artifacts.representation)

    except LamanError as e:
        row.update(status='failed', exit_code=e.exit_code, error=f"{type(e).__name__}: {e.message}")
    except Exception as e:
        row.update(status='failed', exit_code=4, error=f"{type(e).__name__}: {e}")

    row['total_ms'] = round((time.perf_counter() - start) * 1000.0, 3)
    return row


class BatchDrawer:
    def __init__(self, output_folder: Optional[str] = None, jobs: Optional[int] = None, svg: bool = False):
        config = get_config()
        self.output_folder = output_folder
        self.jobs = jobs or int(config.get('BATCH_JOBS', 1))
        self.svg = svg

        # Results tracking
        self.processed_files: List[Dict] = []
        self.failed_files: List[Dict] = []

        self.logger = logging.getLogger(__name__)

    def find_graph_files(self, paths: List[str]) -> List[str]:
        """Expand directories to their *.json files; keep explicit files as given"""
        found = []
        for path in paths:
            if os.path.isdir(path):
                found.extend(sorted(str(p) for p in Path(path).glob('*.json')))
            else:
                found.append(path)
        return found

    def process_batch(self, graph_files: List[str]) -> pd.DataFrame:
        """Draw every file, in parallel when jobs > 1; rows keep input order"""
        if not graph_files:
            self.logger.warning("No graph files to process")
            return pd.DataFrame(columns=SUMMARY_COLUMNS)

        self.logger.info(f"Processing {len(graph_files)} graph files with {self.jobs} job(s)")
        if self.output_folder:
            os.makedirs(self.output_folder, exist_ok=True)

        if self.jobs == 1:
            rows = [draw_file(path, self.output_folder, self.svg) for path in graph_files]
        else:
            with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                futures = [pool.submit(draw_file, path, self.output_folder, self.svg) for path in graph_files]
                rows = [future.result() for future in futures]

        for row in rows:
            if row['status'] == 'ok':
                self.processed_files.append(row)
            else:
                self.failed_files.append(row)
                self.logger.error(f"Failed to draw {row['file']}: {row['error']}")

        return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)

    def save_summary_csv(self, df: pd.DataFrame) -> str:
        """Write the per-file summary table next to the outputs"""
        folder = self.output_folder or '.'
        os.makedirs(folder, exist_ok=True)
        output_path = os.path.join(folder, SUMMARY_FILENAME)
        df.to_csv(output_path, index=False)
        self.logger.info(f"Saved batch summary: {output_path}")
        return output_path

    @property
    def exit_code(self) -> int:
        return max((row['exit_code'] for row in self.failed_files), default=0)

    def show_summary_report(self, df: pd.DataFrame, stream=None) -> None:
        """Show final processing summary"""
        out = stream or sys.stdout
        print("\n" + "=" * 80, file=out)
        print("📊 BATCH DRAWING SUMMARY", file=out)
        print("=" * 80, file=out)

        total_files = len(self.processed_files) + len(self.failed_files)
        print(f"\n📁 Graph files:", file=out)
        print(f"  ✅ Drawn and validated: {len(self.processed_files)}/{total_files}", file=out)
        print(f"  ❌ Failed: {len(self.failed_files)}/{total_files}", file=out)

        if self.failed_files:
            print(f"\n❌ Failed files:", file=out)
            for row in self.failed_files:
                print(f"  - {row['file']} (exit {row['exit_code']}): {row['error']}", file=out)

        drawn = df[df['status'] == 'ok'] if not df.empty else df
        if not drawn.empty:
            print(f"\n📐 Representations:", file=out)
            print(f"  Vertices: {int(drawn['n'].min())} to {int(drawn['n'].max())}", file=out)
            print(f"  Largest extent: {int(drawn['width'].max())} x {int(drawn['height'].max())}", file=out)
            print(f"  Mean time: {drawn['total_ms'].mean():,.1f} ms", file=out)

        print("\n" + "=" * 80, file=out)


def run_batch(paths: List[str], output_folder: Optional[str] = None, jobs: Optional[int] = None,
              svg: bool = False, stream=None) -> int:
    """Draw all files, write batch_summary.csv, print the report; returns the exit code"""
    drawer = BatchDrawer(output_folder, jobs, svg)
    df = drawer.process_batch(drawer.find_graph_files(paths))
    drawer.save_summary_csv(df)
    drawer.show_summary_report(df, stream)
    return drawer.exit_code
