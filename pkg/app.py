"""
HDX Product Complexes - command-line interface
"""
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import click
import pandas as pd

from config.settings import (
    COMPLEX_KINDS,
    DEFAULT_SEED,
    GRAPH_KINDS,
    MAX_MIX_STEPS,
    MIX_THRESHOLD,
    REPORT_FORMAT_VERSION,
)
from src.core.complex import Complex, SplitClass, build_Q, build_Z
from src.core.expansion import class_gap_summary, compare_constructions, local_sweep, verify_theorems
from src.core.graphs import WeightedGraph, gen_graph
from src.core.run_config import RunConfig, make_config, parse_gen_spec
from src.core.walks import (
    evolve,
    level_spectrum,
    mix_until,
    point_mass,
    sample_walk,
    stationary_measure,
    steps_to_threshold,
    walk_operator,
)
from src.core.weights import (
    check_against_complex,
    check_closed_form,
    check_ratio_identities,
    class_step_profile,
    class_weights,
    closed_form_ratio,
)
from src.services.complex_store import complex_to_document, export_complex, import_complex
from src.services.graph_store import graph_to_text, load_graph, save_graph
from src.services.report_writer import (
    csv_text,
    json_text,
    spectrum_frame,
    trace_frame,
    write_csv,
    write_json,
)
from src.utils.formatters import format_class, format_face, format_float, format_rational
from src.utils.logger import setup_logger

logger = setup_logger("hdx")

graph_source = [
    click.option('--graph', 'graph', type=click.Path(exists=True, dir_okay=False), help="Edge-list file"),
    click.option('--gen', 'gen', help="Generator spec TYPE:N[:D], e.g. cycle:8"),
    click.option('--seed', type=int, default=DEFAULT_SEED, show_default=True, help="Generator seed"),
]
dimensions = [
    click.option('--H', 'H', type=int, help="Dimension of the top faces"),
    click.option('--s', 's', type=int, help="Number of colors"),
]
output_option = click.option('-o', '--output', type=click.Path(dir_okay=False), help="Output file (stdout if omitted)")


def _options(options):
    def decorator(f):
        for option in reversed(options):
            f = option(f)
        return f
    return decorator


def _source_graph(config: RunConfig) -> WeightedGraph:
    if config.graph is not None:
        return load_graph(config.graph)
    kind, n, d = parse_gen_spec(config.gen)
    return gen_graph(kind, n, d, seed=config.seed)


def _source_complex(config: RunConfig) -> Complex:
    if config.complex is not None:
        return import_complex(config.complex)
    g = _source_graph(config)
    if config.kind == "Q":
        return build_Q(g, config.H, config.s, allow_weighted=config.allow_weighted, max_faces=config.max_faces)
    return build_Z(g, config.H, config.s, max_faces=config.max_faces)


def _report(config: RunConfig, body: Dict[str, Any]) -> Dict[str, Any]:
    return {'format': REPORT_FORMAT_VERSION, 'config': config.to_document(), **body}


def _emit_json(document: Dict[str, Any], output: Optional[str]) -> None:
    if output:
        write_json(document, output)
        logger.info(f"Wrote {output}")
    else:
        click.echo(json_text(document), nl=False)


def _emit_csv(frame: pd.DataFrame, config: RunConfig) -> None:
    """CSV to the output file with a `<output>.meta.json` sidecar carrying the run config, or to stdout."""
    if config.output:
        write_csv(frame, config.output)
        write_json(_report(config, {'table': Path(config.output).name}), f"{config.output}.meta.json")
        logger.info(f"Wrote {config.output}")
    else:
        click.echo(csv_text(frame), nl=False)


@click.group()
@click.option('--log-level', default=None, help="Override LOG_LEVEL")
def cli(log_level):
    """Weighted product complexes over graphs: builds, walk spectra and expansion checks."""
    if log_level:
        setup_logger("hdx").setLevel(log_level.upper())


@cli.command('gen-graph')
@click.option('--type', 'graph_type', required=True, type=click.Choice(sorted(GRAPH_KINDS)))
@click.option('--n', type=int, required=True)
@click.option('--d', type=int, default=None, help="Degree (random-regular)")
@click.option('--seed', type=int, default=DEFAULT_SEED, show_default=True)
@output_option
def gen_graph_command(graph_type, n, d, seed, output):
    """Generate a cycle, complete or random regular graph as an edge list."""
    config = make_config('gen-graph', graph_type=graph_type, n=n, d=d, seed=seed, output=output)
    graph = gen_graph(GRAPH_KINDS[config.graph_type], config.n, config.d, seed=config.seed)
    if output:
        save_graph(graph, output)
        logger.info(f"Wrote {graph_type} graph with {len(graph.edges)} edges to {output}")
    else:
        click.echo(graph_to_text(graph), nl=False)


@cli.command()
@_options(graph_source + dimensions)
@click.option('--kind', type=click.Choice(COMPLEX_KINDS, case_sensitive=False), default="Z", show_default=True)
@click.option('--allow-weighted', is_flag=True, help="Weighted extension of Q")
@click.option('--max-faces', type=int, default=None, help="Override MAX_TOP_FACES")
@output_option
def build(graph, gen, seed, H, s, kind, allow_weighted, max_faces, output):
    """Build Z or Q and write the complex JSON."""
    config = make_config('build', graph=graph, gen=gen, seed=seed, H=H, s=s, kind=kind,
                         allow_weighted=allow_weighted, max_faces=max_faces, output=output)
    c = _source_complex(config)
    if output:
        export_complex(c, output, config=config.to_document())
    else:
        document = complex_to_document(c, config=config.to_document())
        click.echo(json_text(document), nl=False)


@cli.command()
@click.option('--complex', 'complex_path', type=click.Path(exists=True, dir_okay=False), help="Complex JSON")
@_options(graph_source + dimensions)
@click.option('--kind', type=click.Choice(COMPLEX_KINDS, case_sensitive=False), default="Z", show_default=True)
@click.option('--level', type=int, default=0, show_default=True)
@click.option('--walk', type=click.Choice(["updown", "downup"]), default="updown", show_default=True)
@click.option('--tol', 'tolerance', type=float, default=None, help="Override EIGEN_TOLERANCE")
@output_option
def spectrum(complex_path, graph, gen, seed, H, s, kind, level, walk, tolerance, output):
    """Eigenvalues of a level walk as level,walk,i,eigenvalue rows."""
    config = make_config('spectrum', complex=complex_path, graph=graph, gen=gen, seed=seed, H=H, s=s,
                         kind=kind, level=level, walk=walk, tolerance=tolerance, output=output)
    c = _source_complex(config)
    report = level_spectrum(c, config.walk, config.level, tolerance=config.tolerance)
    logger.info(f"{c.kind} {walk} level {level}: gap {report.gap:.12g}")
    _emit_csv(spectrum_frame(config.level, config.walk, report.eigenvalues), config)


@cli.command('local-sweep')
@click.option('--complex', 'complex_path', type=click.Path(exists=True, dir_okay=False), help="Complex JSON")
@_options(graph_source + dimensions)
@click.option('--kind', type=click.Choice(COMPLEX_KINDS, case_sensitive=False), default="Z", show_default=True)
@click.option('--level', type=int, default=None, help="Single level (default: 0..H-2)")
@click.option('--workers', type=int, default=None, help="Override SWEEP_WORKERS")
@output_option
def local_sweep_command(complex_path, graph, gen, seed, H, s, kind, level, workers, output):
    """Link gaps of every face, one row per link."""
    config = make_config('local-sweep', complex=complex_path, graph=graph, gen=gen, seed=seed, H=H, s=s,
                         kind=kind, level=level, workers=workers, output=output)
    c = _source_complex(config)
    levels = [config.level] if config.level is not None else list(range(0, c.H - 1))

    rows = []
    for k in levels:
        result = local_sweep(c, k, config.workers)
        for group, stats in class_gap_summary(result, c).items():
            logger.info(f"level {k} {group}: {stats['count']} links, gaps in [{format_float(stats['min'])}, {format_float(stats['max'])}]")
        for entry in result.links:
            rows.append({
                'level': k,
                'face': format_face(entry.face),
                'class': format_class(entry.face_class),
                'omega2': entry.omega2,
                'gap': entry.gap,
            })
    _emit_csv(pd.DataFrame(rows, columns=['level', 'face', 'class', 'omega2', 'gap']), config)


@cli.command()
@click.option('--complex', 'complex_path', type=click.Path(exists=True, dir_okay=False), help="Complex JSON")
@_options(graph_source + dimensions)
@click.option('--kind', type=click.Choice(COMPLEX_KINDS, case_sensitive=False), default="Z", show_default=True)
@click.option('--level', type=int, required=True)
@click.option('--walk', type=click.Choice(["updown", "downup"]), default="updown", show_default=True)
@click.option('--steps', type=int, default=None, help="Fixed step count (default: run to --threshold)")
@click.option('--start', type=int, default=0, show_default=True, help="Index of the start face")
@click.option('--threshold', type=float, default=None, help="Override MIX_THRESHOLD")
@click.option('--sample', is_flag=True, help="Print a sampled trajectory instead of the TV trace")
@output_option
def mix(complex_path, graph, gen, seed, H, s, kind, level, walk, steps, start, threshold, sample, output):
    """Total-variation trace of a level walk from a point mass."""
    config = make_config('mix', complex=complex_path, graph=graph, gen=gen, seed=seed, H=H, s=s, kind=kind,
                         level=level, walk=walk, steps=steps, start=start, threshold=threshold,
                         sample=sample, output=output)
    c = _source_complex(config)
    w = walk_operator(c, config.walk, config.level)
    if not 0 <= config.start < w.shape[1]:
        raise click.BadParameter(f"start index must lie in 0..{w.shape[1] - 1}", param_hint="--start")

    if config.sample:
        path = sample_walk(w, config.start, config.steps or 10, config.seed)
        faces = c.faces(config.level)
        _emit_json(_report(config, {'trajectory': [format_face(faces[i]) for i in path]}), config.output)
        return

    pi = stationary_measure(c, config.level)
    p0 = point_mass(w.shape[1], config.start)
    threshold = MIX_THRESHOLD if config.threshold is None else config.threshold
    if config.steps is not None:
        trace = evolve(w, p0, config.steps, pi)
    else:
        trace = mix_until(w, p0, pi, threshold, MAX_MIX_STEPS)
    logger.info(f"TV below {threshold} after {steps_to_threshold(trace, threshold)} steps")
    _emit_csv(trace_frame(trace), config)


@cli.command()
@_options(graph_source + dimensions)
@click.option('--explore', is_flag=True, help="Report theorem values when the hypotheses fail")
@click.option('--tol', 'tolerance', type=float, default=None, help="Override EIGEN_TOLERANCE")
@click.option('--workers', type=int, default=None, help="Override SWEEP_WORKERS")
@output_option
@click.pass_context
def verify(ctx, graph, gen, seed, H, s, explore, tolerance, workers, output):
    """Run the expansion checks on Z (and the Q baseline); exit 1 if any check fails."""
    config = make_config('verify', graph=graph, gen=gen, seed=seed, H=H, s=s, explore=explore,
                         tolerance=tolerance, workers=workers, output=output)
    report = verify_theorems(_source_graph(config), config.H, config.s, explore=config.explore,
                             tolerance=config.tolerance, workers=config.workers,
                             config=config.to_document())
    _emit_json(report.to_document(), config.output)
    for check in report.failed():
        click.echo(f"FAIL {check.check_id}: expected {check.relation} {format_float(check.expected)}, "
                   f"computed {format_float(check.computed)}", err=True)
    ctx.exit(0 if report.ok else 1)


@cli.command()
@_options(graph_source + dimensions)
@click.option('--workers', type=int, default=None, help="Override SWEEP_WORKERS")
@output_option
def compare(graph, gen, seed, H, s, workers, output):
    """Z against Q: up-down gaps and local expansion per level."""
    config = make_config('compare', graph=graph, gen=gen, seed=seed, H=H, s=s, workers=workers, output=output)
    rows = compare_constructions(_source_graph(config), config.H, config.s, config.workers)
    frame = pd.DataFrame(rows, columns=['k', 'z_updown_gap', 'q_updown_gap', 'z_local', 'q_local'])
    _emit_csv(frame, config)


@cli.command()
@_options(graph_source + dimensions)
@click.option('--kind', type=click.Choice(COMPLEX_KINDS, case_sensitive=False), default="Z", show_default=True)
@output_option
def weights(graph, gen, seed, H, s, kind, output):
    """Exact class weights, closed-form ratios and up-down class step probabilities."""
    config = make_config('weights', graph=graph, gen=gen, seed=seed, H=H, s=s, kind=kind, output=output)
    if config.has('graph_source'):
        g = _source_graph(config)
    else:
        g = WeightedGraph.from_edges(2, [(0, 1, 1)])
    table = class_weights(g, config.H, config.s, config.kind, allow_weighted=not g.is_unit_weighted)

    classes = []
    for cls, w in sorted(table.weights.items(), key=lambda item: (item[0].k, format_class(item[0]))):
        entry = {'class': format_class(cls), 'cardinality': cls.k, 'weight': format_rational(w)}
        if config.kind == "Z" and isinstance(cls, SplitClass) and cls.k >= 2:
            entry['closed_form_ratio'] = format_rational(closed_form_ratio(config.H, config.s, cls.k, cls.j))
        classes.append(entry)

    identities = {'closed_form': None, 'ratios': None}
    step_profile = {}
    if config.kind == "Z":
        identities['closed_form'] = check_closed_form(table).ok
        identities['ratios'] = check_ratio_identities(table).ok
        for k in range(2, config.H + 1):
            step_profile[str(k)] = [
                {'j': j, 'up': format_rational(up), 'down': format_rational(down), 'stay': format_rational(stay)}
                for j, up, down, stay in class_step_profile(table, k)
            ]
    complex_ = build_Z(g, config.H, config.s) if config.kind == "Z" else build_Q(g, config.H, config.s, allow_weighted=True)
    identities['propagation'] = check_against_complex(table, complex_).ok

    _emit_json(_report(config, {'classes': classes, 'step_profile': step_profile, 'identities': identities}),
               config.output)


if __name__ == "__main__":
    from run import main
    sys.exit(main())
