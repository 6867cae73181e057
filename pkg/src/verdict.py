"""
Verdict objects returned by the structural verifiers
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class Verdict:
    """Outcome of a check; verifiers return these instead of raising"""
    ok: bool
    rule: Optional[str] = None
    witness: Any = None
    message: str = ''
    notes: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls, notes: Optional[List[str]] = None) -> 'Verdict':
        return cls(ok=True, notes=notes or [])

    @classmethod
    def failed(cls, rule: str, witness: Any = None, message: str = '') -> 'Verdict':
        return cls(ok=False, rule=rule, witness=witness, message=message)

    def to_dict(self) -> Dict[str, Any]:
        witness = self.witness
        if isinstance(witness, (set, frozenset)):
            witness = sorted(witness)
        return {
            'ok': self.ok,
            'rule': self.rule,
            'witness': witness,
            'message': self.message,
            'notes': list(self.notes),
        }
