"""Command-line interface.

Exit codes: 0 success, 1 check mismatch, 2 parse or validation error.
"""

from __future__ import annotations

import sys
import time

import click

from .formats import (FormatError, map_to_json, num_from_str, parse_terrain,
                      serialize_map, serialize_terrain)
from .generators import gen_comb, gen_random
from .oracle import oracle_map
from .terrain import ViewpointSet, validate as validate_gp


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


def _load(path: str, radius):
    try:
        terrain, viewpoints = parse_terrain(_read(path))
    except FormatError as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(2)
    if radius is not None:
        try:
            viewpoints = ViewpointSet(viewpoints.indices, num_from_str(radius))
        except (FormatError, ValueError) as exc:
            click.echo(f"bad radius: {exc}", err=True)
            sys.exit(2)
    return terrain, viewpoints


def _gate(terrain, viewpoints):
    report = validate_gp(terrain, viewpoints)
    if not report.ok:
        for line in report.lines():
            click.echo(line, err=True)
        sys.exit(2)


def _build(kind: str, terrain, viewpoints, algo: str = "sweep"):
    limited = viewpoints.radius is not None
    if algo == "oracle":
        return oracle_map(terrain, viewpoints, kind)
    if kind == "vis":
        if limited:
            from .limited import build_vis_limited
            return build_vis_limited(terrain, viewpoints)
        from .vis_sweep import build_vis
        return build_vis(terrain, viewpoints)
    if kind == "colvis":
        if limited:
            from .limited import build_colvis_limited
            return build_colvis_limited(terrain, viewpoints)
        from .colvis_sweep import build_colvis
        return build_colvis(terrain, viewpoints)
    if algo == "dnc":
        from .vorvis import build_vorvis_dnc
        return build_vorvis_dnc(terrain, viewpoints)
    from .vorvis import build_vorvis
    return build_vorvis(terrain, viewpoints)


def _emit(mp, fmt: str, out: str):
    text = map_to_json(mp) if fmt == "json" else serialize_map(mp)
    if out == "-":
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


@click.group()
def cli():
    """Visibility maps of 1.5D terrains with multiple viewpoints."""


@cli.command()
@click.argument("instance")
def validate(instance):
    """Check general position; exit 2 when a sweep would refuse it."""
    terrain, viewpoints = _load(instance, None)
    report = validate_gp(terrain, viewpoints)
    lines = list(report.lines())
    for line in lines:
        click.echo(line)
    if not lines:
        click.echo("ok")
    if not report.ok:
        sys.exit(2)


def _map_command(kind, algos):
    @click.argument("instance")
    @click.option("--algo", type=click.Choice(algos), default="sweep",
                  show_default=True)
    @click.option("--radius", default=None,
                  help="Override the sight radius (exact number).")
    @click.option("--format", "fmt", type=click.Choice(["text", "json"]),
                  default="text", show_default=True)
    @click.option("-o", "--output", default="-", show_default=True)
    def run(instance, algo, radius, fmt, output):
        terrain, viewpoints = _load(instance, radius)
        if algo != "oracle":
            _gate(terrain, viewpoints)
        _emit(_build(kind, terrain, viewpoints, algo), fmt, output)
    run.__name__ = kind
    run.__doc__ = f"Compute the {kind} map."
    return cli.command()(run)


vis = _map_command("vis", ["sweep", "oracle"])
colvis = _map_command("colvis", ["sweep", "oracle"])
vorvis = _map_command("vorvis", ["sweep", "dnc", "oracle"])


@cli.command()
@click.argument("kind", type=click.Choice(["vis", "colvis", "vorvis"]))
@click.argument("instance")
@click.option("--radius", default=None)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", show_default=True)
@click.option("-o", "--output", default="-", show_default=True)
def oracle(kind, instance, radius, fmt, output):
    """Compute a map by brute force (no general-position gate)."""
    terrain, viewpoints = _load(instance, radius)
    _emit(oracle_map(terrain, viewpoints, kind), fmt, output)


@cli.command()
@click.argument("kind", type=click.Choice(["vis", "colvis", "vorvis", "all"]))
@click.argument("instance")
@click.option("--radius", default=None)
def check(kind, instance, radius):
    """Compare the fast algorithms against the oracle; exit 1 on mismatch."""
    terrain, viewpoints = _load(instance, radius)
    _gate(terrain, viewpoints)
    kinds = ["vis", "colvis", "vorvis"] if kind == "all" else [kind]
    failed = False
    for k in kinds:
        fast = _build(k, terrain, viewpoints)
        want = oracle_map(terrain, viewpoints, k)
        ok = fast == want
        if k == "vorvis" and viewpoints.radius is None:
            from .vorvis import build_vorvis_dnc
            ok = ok and build_vorvis_dnc(terrain, viewpoints) == want
        click.echo(f"{k}: {'ok' if ok else 'MISMATCH'}")
        failed = failed or not ok
    if failed:
        sys.exit(1)


@cli.group()
def gen():
    """Generate instances."""


@gen.command()
@click.option("--m", "m", type=int, required=True, help="Viewpoint count.")
@click.option("--teeth", type=int, required=True)
@click.option("--n", "n", type=int, default=None,
              help="Pad the vertex count with extra floor vertices.")
@click.option("--no-check", is_flag=True,
              help="Skip the general-position re-validation (large sizes).")
@click.option("-o", "--output", default="-", show_default=True)
def comb(m, teeth, n, no_check, output):
    """Comb instance whose maps have at least m*teeth regions."""
    try:
        terrain, viewpoints = gen_comb(m, teeth, n=n, check=not no_check)
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    text = serialize_terrain(terrain, viewpoints)
    if output == "-":
        click.echo(text, nl=False)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


@gen.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--radius", default=None)
@click.option("-o", "--output", default="-", show_default=True)
def random(n, m, seed, radius, output):
    """Random general-position instance."""
    try:
        r = num_from_str(radius) if radius is not None else None
        terrain, viewpoints = gen_random(n, m, seed, r)
    except (FormatError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    text = serialize_terrain(terrain, viewpoints)
    if output == "-":
        click.echo(text, nl=False)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


@cli.command()
@click.argument("instance")
@click.option("--svg", "svg_path", required=True,
              help="Output SVG file path.")
@click.option("--kind", type=click.Choice(["vis", "colvis", "vorvis", "none"]),
              default="colvis", show_default=True)
def render(instance, svg_path, kind):
    """Draw the terrain (and a map band) as an SVG file."""
    from .render import render_svg
    terrain, viewpoints = _load(instance, None)
    mp = None
    if kind != "none":
        _gate(terrain, viewpoints)
        mp = _build(kind, terrain, viewpoints)
    with open(svg_path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(terrain, viewpoints, mp))
    click.echo(f"wrote {svg_path}")


@cli.command()
@click.option("--m", "m", type=int, default=8, show_default=True)
@click.option("--sizes", default="1024,2048,4096", show_default=True,
              help="Comma-separated comb vertex counts.")
def bench(m, sizes):
    """Runtime table of the sweep algorithms on comb instances."""
    from .colvis_sweep import build_colvis
    from .vis_sweep import build_vis
    from .vorvis import build_vorvis
    click.echo(f"{'n':>8} {'vis[s]':>9} {'colvis[s]':>9} {'vorvis[s]':>9}")
    for tok in sizes.split(","):
        n = int(tok)
        terrain, viewpoints = gen_comb(m, max((n - m - 2) // 3, 1), n=n,
                                       check=False)
        t0 = time.perf_counter()
        build_vis(terrain, viewpoints)
        t1 = time.perf_counter()
        cv = build_colvis(terrain, viewpoints)
        t2 = time.perf_counter()
        build_vorvis(terrain, viewpoints, colvis=cv)
        t3 = time.perf_counter()
        click.echo(f"{n:>8} {t1 - t0:>9.3f} {t2 - t1:>9.3f} {t3 - t2:>9.3f}")


if __name__ == "__main__":
    cli()
