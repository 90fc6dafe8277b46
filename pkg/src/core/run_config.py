"""
Run configuration: the validated, serializable description of one CLI run
"""
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from config.settings import DEFAULT_SEED, GRAPH_KINDS
from src.errors.complex_errors import InvalidParametersError
from src.utils.validators import validate_build_params, validate_kind, validate_walk

# Fields each subcommand needs; 'graph_source' is --graph or --gen, 'complex_source'
# is --complex or a graph source with H and s
COMMAND_TEMPLATES: Dict[str, Dict[str, Any]] = {
    'gen-graph': {
        'required_fields': ['graph_type', 'n'],
        'optional_fields': ['d', 'seed', 'output'],
    },
    'build': {
        'required_fields': ['graph_source', 'H', 's'],
        'optional_fields': ['kind', 'allow_weighted', 'max_faces', 'output'],
    },
    'spectrum': {
        'required_fields': ['complex_source'],
        'optional_fields': ['level', 'walk', 'output', 'tolerance'],
    },
    'local-sweep': {
        'required_fields': ['complex_source'],
        'optional_fields': ['level', 'workers', 'output'],
    },
    'mix': {
        'required_fields': ['complex_source', 'level'],
        'optional_fields': ['steps', 'start', 'threshold', 'sample', 'seed', 'output'],
    },
    'verify': {
        'required_fields': ['graph_source', 'H', 's'],
        'optional_fields': ['explore', 'tolerance', 'workers', 'output'],
    },
    'compare': {
        'required_fields': ['graph_source', 'H', 's'],
        'optional_fields': ['workers', 'output'],
    },
    'weights': {
        'required_fields': ['H', 's'],
        'optional_fields': ['graph_source', 'kind', 'output'],
    },
}


class RunConfig(BaseModel):
    """Every input of a run; embedded verbatim in its reports."""
    model_config = ConfigDict(extra='forbid')

    subcommand: str
    graph: Optional[str] = None
    gen: Optional[str] = None
    complex: Optional[str] = None
    graph_type: Optional[str] = None
    n: Optional[int] = None
    d: Optional[int] = None
    H: Optional[int] = None
    s: Optional[int] = None
    kind: str = "Z"
    allow_weighted: bool = False
    max_faces: Optional[int] = None
    level: Optional[int] = None
    walk: str = "updown"
    steps: Optional[int] = None
    start: int = 0
    threshold: Optional[float] = None
    sample: bool = False
    seed: int = DEFAULT_SEED
    tolerance: Optional[float] = None
    explore: bool = False
    workers: Optional[int] = None
    output: Optional[str] = None

    @field_validator('kind')
    @classmethod
    def _kind(cls, value: str) -> str:
        if not validate_kind(value):
            raise ValueError(f"kind must be z or q, got {value!r}")
        return value.upper()

    @field_validator('walk')
    @classmethod
    def _walk(cls, value: str) -> str:
        if not validate_walk(value):
            raise ValueError(f"unknown walk {value!r}")
        return value

    @field_validator('graph_type')
    @classmethod
    def _graph_type(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in GRAPH_KINDS:
            raise ValueError(f"graph type must be one of {sorted(GRAPH_KINDS)}, got {value!r}")
        return value

    def has(self, name: str) -> bool:
        if name == 'graph_source':
            return self.graph is not None or self.gen is not None
        if name == 'complex_source':
            return self.complex is not None or (self.has('graph_source') and self.H is not None and self.s is not None)
        return getattr(self, name) is not None

    def to_document(self) -> Dict[str, Any]:
        return self.model_dump()


def validate_config(config: RunConfig) -> Dict[str, Any]:
    """
    Validate a configuration against its subcommand template

    Args:
        config: Parsed configuration

    Returns:
        Dictionary with 'valid' flag and 'errors' list
    """
    template = COMMAND_TEMPLATES.get(config.subcommand)
    if template is None:
        return {'valid': False, 'errors': [f"Unknown subcommand: {config.subcommand}"]}

    errors = [f"Missing required field: {name}" for name in template['required_fields'] if not config.has(name)]

    if config.graph is not None and config.gen is not None:
        errors.append("Give either --graph or --gen, not both")
    if config.H is not None and config.s is not None:
        errors.extend(validate_build_params(config.H, config.s, config.kind)['errors'])
    if config.gen is not None:
        try:
            parse_gen_spec(config.gen)
        except InvalidParametersError as e:
            errors.append(str(e))
    if config.steps is not None and config.steps < 0:
        errors.append(f"steps must be non-negative, got {config.steps}")

    return {
        'valid': len(errors) == 0,
        'errors': errors
    }


def make_config(subcommand: str, **options) -> RunConfig:
    """
    Build and validate the configuration of a run

    Raises:
        InvalidParametersError: Listing every problem found
    """
    try:
        config = RunConfig(subcommand=subcommand, **options)
    except ValidationError as e:
        messages = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()]
        raise InvalidParametersError("; ".join(messages)) from e

    validation = validate_config(config)
    if not validation['valid']:
        raise InvalidParametersError("; ".join(validation['errors']))
    return config


def parse_gen_spec(spec: str) -> Tuple[str, int, Optional[int]]:
    """
    Parse a generator spec TYPE:N[:D] such as "cycle:8" or "random-regular:10:3"

    Returns:
        (generator kind, n, d)
    """
    parts = spec.split(":")
    if len(parts) not in (2, 3) or parts[0] not in GRAPH_KINDS:
        raise InvalidParametersError(f"generator spec must be TYPE:N[:D] with TYPE in {sorted(GRAPH_KINDS)}, got {spec!r}")
    try:
        n = int(parts[1])
        d = int(parts[2]) if len(parts) == 3 else None
    except ValueError:
        raise InvalidParametersError(f"generator spec {spec!r} has a non-integer size")
    return GRAPH_KINDS[parts[0]], n, d
