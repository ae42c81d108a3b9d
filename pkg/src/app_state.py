"""
Central application state management
Holds the documents loaded and the results produced by one command invocation
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .config import SOLVER_CONFIG


@dataclass
class RunSettings:
    """Effective solver settings after instance options and command-line flags"""
    box_inflate: Any = SOLVER_CONFIG['box_inflate']
    enum_cap: int = SOLVER_CONFIG['enum_cap']
    epsilon: Any = SOLVER_CONFIG['epsilon']
    cross_check: bool = False

    def solver_config(self) -> Dict[str, Any]:
        return {'box_inflate': self.box_inflate, 'enum_cap': self.enum_cap, 'epsilon': self.epsilon}


@dataclass
class CommandResult:
    """What a command prints and the exit code it ends with"""
    exit_code: int
    document: Dict[str, Any] = field(default_factory=dict)


class AppState:
    """Central state for one command-line run"""

    def __init__(self):
        self.reset()

    def reset(self):
        """Reset all state to initial values"""
        self.settings = RunSettings()
        self.instance_path: Optional[str] = None
        self.instance = None
        self.outcome = None
        self.verification = None
        self.dual = None
        self.witness_report = None
        self.cross_check: List[Dict[str, Any]] = []

    def apply_overrides(self, options: Dict[str, Any], flags: Dict[str, Any]):
        """Instance options first, then explicit command-line flags"""
        for source in (options or {}, flags or {}):
            for key, value in source.items():
                if value is not None and hasattr(self.settings, key):
                    setattr(self.settings, key, value)

    def load_instance(self, instance, path: Optional[str] = None, flags: Optional[Dict[str, Any]] = None):
        self.instance = instance
        self.instance_path = path
        self.apply_overrides(instance.options, flags or {})

    def export_state(self) -> Dict[str, Any]:
        """Summary of the run for logging"""
        return {
            'instance_path': self.instance_path,
            'settings': self.settings.solver_config(),
            'outcome': getattr(self.outcome, 'kind', None),
            'verified': None if self.verification is None else self.verification.passed,
            'strong_duality': None if self.dual is None else self.dual.strong,
            'cross_check_issues': len(self.cross_check),
        }
