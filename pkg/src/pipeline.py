"""
Pipeline
Runs the construction from a plane Laman graph to its L-contact
representation, timing every stage and optionally verifying each one.
"""

import logging
import time
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Optional

import pandas as pd

from src.angular import AngularMatching, AngularStructure, compute_angular_tree, derive_matching
from src.config_loader import get_config
from src.errors import NotLamanError, PipelineInvariantError
from src.henneberg import HennebergSequence, decompose, replay
from src.labeling import (AngleLabeling, EdgeLabeling, angle_labeling_from_structure,
                          check_angle_labeling, edge_labeling_from_angular_tree,
                          verify_edge_labeling)
from src.laman import validate_laman
from src.lcontact import (InequalityGraph, LContactRepresentation, VertexTypes, assign_coordinates,
                          assign_types, build_inequality_graphs, check_face_paths,
                          check_sink_edges, check_types, emit_lshapes, representation_stats)
from src.plane_graph import PlaneGraph, require_two_connected
from src.validator import matched_faces, validate_representation
from src.verdict import Verdict

logger = logging.getLogger(__name__)

STAGES = ('henneberg', 'angular-tree', 'matching', 'angle-labeling', 'edge-labeling',
          'types', 'dr', 'db', 'coords', 'representation')


@dataclass
class PipelineArtifacts:
    """Everything the construction produces for one graph"""
    graph: PlaneGraph
    sequence: Optional[HennebergSequence] = None
    tree: Optional[AngularStructure] = None
    matching: Optional[AngularMatching] = None
    angles: Optional[AngleLabeling] = None
    labeling: Optional[EdgeLabeling] = None
    types: Optional[VertexTypes] = None
    d_r: Optional[InequalityGraph] = None
    d_b: Optional[InequalityGraph] = None
    coords: Optional[Dict[int, tuple]] = None
    representation: Optional[LContactRepresentation] = None
    verdict: Optional[Verdict] = None
    seed: Optional[int] = None
    timings: Dict[str, float] = field(default_factory=dict)

    def timings_frame(self) -> pd.DataFrame:
        """Stage durations in milliseconds, in execution order"""
        frame = pd.DataFrame([{'stage': stage, 'ms': ms} for stage, ms in self.timings.items()],
                             columns=['stage', 'ms'])
        frame['share'] = frame['ms'] / frame['ms'].sum() if len(frame) and frame['ms'].sum() > 0 else 0.0
        return frame

    def stats(self) -> Dict[str, Any]:
        stats = representation_stats(self.representation) if self.representation else {}
        if self.representation is not None:
            hosts = Counter(f for f in matched_faces(self.graph, self.representation).values() if f is not None)
            stats['right_angles_per_face'] = {str(f): hosts.get(f, 0) for f in self.graph.inner_faces}
        stats['total_ms'] = round(sum(self.timings.values()), 3)
        return stats

    def stage_payload(self, stage: str) -> Any:
        """JSON-ready dump of one stage"""
        if stage == 'henneberg':
            return self.sequence.to_dict()
        if stage == 'angular-tree':
            return self.tree.to_dict()
        if stage == 'matching':
            return self.matching.to_dict()
        if stage == 'angle-labeling':
            return self.angles.to_dict()
        if stage == 'edge-labeling':
            return self.labeling.to_dict()
        if stage == 'types':
            return self.types.to_dict()
        if stage == 'dr':
            return self.d_r.to_dict()
        if stage == 'db':
            return self.d_b.to_dict()
        if stage == 'coords':
            return {str(v): list(p) for v, p in sorted(self.coords.items())}
        if stage == 'representation':
            return self.representation.to_dict()
        raise ValueError(f"unknown stage {stage!r}; choose from {', '.join(STAGES)}")


class Pipeline:
    """Seven-step construction with per-stage timing"""

    def __init__(self, check_stages: Optional[bool] = None):
        config = get_config()
        self.check_stages = config.get('CHECK_STAGES', True) if check_stages is None else check_stages
        self.logger = logging.getLogger(__name__)

    @contextmanager
    def _stage(self, artifacts: PipelineArtifacts, name: str) -> Iterator[None]:
        start = time.perf_counter()
        yield
        ms = (time.perf_counter() - start) * 1000.0
        artifacts.timings[name] = round(ms, 3)
        self.logger.info(f"Stage {name}: {ms:.1f} ms")

    def _require(self, verdict: Verdict, stage: str):
        if self.check_stages and not verdict:
            raise PipelineInvariantError(f"{stage} check failed on rule {verdict.rule}: {verdict.message}",
                                         witness=_flat_witness(verdict.witness))

    def run(self, g: PlaneGraph, sequence: Optional[HennebergSequence] = None,
            until: Optional[str] = None, seed: Optional[int] = None) -> PipelineArtifacts:
        """
        Build every artifact for g

        Args:
            g: plane graph with outer triangle
            sequence: Henneberg sequence to use instead of decomposing g
            until: stop after this stage
            seed: provenance only

        Returns:
            PipelineArtifacts; the final verdict is stored, not raised
        """
        if until is not None and until not in STAGES:
            raise ValueError(f"unknown stage {until!r}")
        artifacts = PipelineArtifacts(graph=g, seed=seed)

        with self._stage(artifacts, 'henneberg'):
            verdict = validate_laman(g)
            if not verdict:
                raise NotLamanError(f"graph is not Laman: {verdict.reason}", witness=verdict.witness)
            require_two_connected(g)
            if sequence is None:
                sequence = decompose(g)
            elif replay(sequence) != g:
                raise PipelineInvariantError("given Henneberg sequence does not replay to the graph")
            artifacts.sequence = sequence
        if until == 'henneberg':
            return artifacts

        with self._stage(artifacts, 'angular-tree'):
            artifacts.tree = compute_angular_tree(g, sequence)
        if until == 'angular-tree':
            return artifacts

        with self._stage(artifacts, 'matching'):
            artifacts.matching = derive_matching(g, artifacts.tree)
        if until == 'matching':
            return artifacts

        with self._stage(artifacts, 'angle-labeling'):
            artifacts.angles = angle_labeling_from_structure(g, artifacts.tree)
            self._require(check_angle_labeling(g, artifacts.angles), 'angle labeling')
        if until == 'angle-labeling':
            return artifacts

        with self._stage(artifacts, 'edge-labeling'):
            artifacts.labeling = edge_labeling_from_angular_tree(g, artifacts.tree)
            self._require(verify_edge_labeling(g, artifacts.labeling), 'edge labeling')
        if until == 'edge-labeling':
            return artifacts

        with self._stage(artifacts, 'types'):
            artifacts.types = assign_types(g, artifacts.labeling, artifacts.matching, artifacts.tree)
            self._require(check_types(g, artifacts.labeling, artifacts.matching, artifacts.types), 'types')
        if until == 'types':
            return artifacts

        with self._stage(artifacts, 'inequality-graphs'):
            artifacts.d_r, artifacts.d_b = build_inequality_graphs(g, artifacts.labeling, artifacts.matching,
                                                                   artifacts.types)
            self._require(check_face_paths(g, artifacts.labeling, artifacts.matching, artifacts.types,
                                           artifacts.d_r, artifacts.d_b), 'face paths')
            self._require(check_sink_edges(artifacts.d_r, artifacts.d_b, artifacts.labeling, artifacts.types),
                          'sink edges')
        if until in ('dr', 'db'):
            return artifacts

        with self._stage(artifacts, 'coords'):
            artifacts.coords = assign_coordinates(artifacts.d_r, artifacts.d_b)
        if until == 'coords':
            return artifacts

        with self._stage(artifacts, 'representation'):
            artifacts.representation = emit_lshapes(g, artifacts.labeling, artifacts.types, artifacts.coords)

        with self._stage(artifacts, 'validate'):
            artifacts.verdict = validate_representation(g, artifacts.representation)
        if artifacts.verdict:
            self.logger.info(f"Representation of {g!r} is valid")
        else:
            self.logger.warning(f"Representation failed clause {artifacts.verdict.rule}: {artifacts.verdict.message}")
        return artifacts


def _flat_witness(witness: Any):
    if witness is None:
        return None
    if isinstance(witness, (list, tuple, set, frozenset)):
        return [str(w) for w in witness]
    return [str(witness)]


def run_pipeline(g: PlaneGraph, sequence: Optional[HennebergSequence] = None, until: Optional[str] = None,
                 check_stages: Optional[bool] = None, seed: Optional[int] = None) -> PipelineArtifacts:
    return Pipeline(check_stages).run(g, sequence=sequence, until=until, seed=seed)
