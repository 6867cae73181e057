"""
Error types for the L-contact pipeline
Every error carries the CLI exit code it maps to
"""

from typing import Iterable, Optional


class LamanError(Exception):
    """Base class for all pipeline errors"""
    exit_code = 4

    def __init__(self, message: str = '', witness: Optional[Iterable] = None):
        super().__init__(message)
        self.message = message
        self.witness = sorted(witness) if witness is not None else None

    def to_dict(self) -> dict:
        return {
            'error': type(self).__name__,
            'message': self.message,
            'witness': self.witness,
            'exit_code': self.exit_code,
        }


# Input problems (exit 1)

class GraphParseError(LamanError):
    exit_code = 1


# Embedding problems (exit 3)

class EmbeddingError(LamanError):
    exit_code = 3


class InconsistentRotation(EmbeddingError):
    pass


class NotAFace(EmbeddingError):
    pass


class NonSimple(EmbeddingError):
    pass


class NotPlanarEmbedding(EmbeddingError):
    pass


class NotTwoConnected(EmbeddingError):
    pass


# Rigidity (exit 2)

class NotLamanError(LamanError):
    exit_code = 2


# Internal invariant failures (exit 4)

class IllegalMove(LamanError):
    pass


class OuterEdgeRemoval(IllegalMove):
    pass


class NoReducibleVertex(LamanError):
    pass


class NotAlternating(LamanError):
    pass


class NotATree(LamanError):
    pass


class OuterNotLeaf(LamanError):
    pass


class InconsistentInputs(LamanError):
    pass


class CycleDetected(LamanError):
    pass


class PipelineInvariantError(LamanError):
    pass


class InvalidRepresentation(LamanError):
    exit_code = 5
