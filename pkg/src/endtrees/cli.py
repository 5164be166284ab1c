"""Command-line front end.

Every command is a pure function of its options: identical invocations
produce byte-identical JSON and DOT artifacts.  Exit codes: 0 success,
1 verification or runtime failure, 2 precondition refusal (dominated end,
thick end, invalid configuration).
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, field

import click

from . import connectivity, export, report
from .connectivity import (THICK, degree_sweep, disjoint_separator_sequence,
                           end_vertex_degree, enumerate_minimal_separators,
                           find_dominating_vertices)
from .decomposition import (build_invariant_family, build_tree,
                            build_tree_decomposition, induced_tree_generators,
                            ray_decomposition, verify_tree_decomposition)
from .errors import (DegreeMismatch, DominatedEnd, EndtreesError, ThickEnd,
                     Unstable)
from .families import (BUILTIN_FAMILIES, FamilySpec, generate_family,
                       graph_to_dot, load_payload)
from .relevant import compute_alpha, enumerate_relevant, relevant_pool
from .symmetry import automorphisms, orbit_count_interior, tree_tail_check

NON_LOCALLY_FINITE = frozenset({"alpha_example"})

DEFAULT_RADII = (4, 6, 8)

DEFAULT_MAX_SIDE = 10

DEFAULT_CAP = 8


@dataclass
class RunConfig:
    family: FamilySpec
    radii: list[int] = field(default_factory=lambda: list(DEFAULT_RADII))
    radius: int | None = None
    k_override: int | None = None
    max_side: int = DEFAULT_MAX_SIDE
    cap: int = DEFAULT_CAP
    budget: int | None = None
    output: str = "."
    json_errors: bool = False

    def __post_init__(self):
        if self.radii != sorted(set(self.radii)):
            raise click.UsageError("radii must be strictly increasing")
        if self.cap <= 0 or (self.budget is not None and self.budget <= 0):
            raise click.UsageError("caps must be positive")


def _read_config_file(path: str | None) -> dict[str, str]:
    if not path:
        return {}
    values = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _resolve(flag, filed, cast, default):
    # precedence: explicit flag, then config file entry, then default
    if flag is not None:
        return flag
    if filed is not None:
        return cast(filed)
    return default


def _budget(value: int | None) -> int:
    env = os.environ.get("ENDTREE_BUDGET")
    if value is not None:
        return value
    if env:
        return int(env)
    return connectivity.DEFAULT_BUDGET


def _spec(family: str, payload_path: str | None) -> FamilySpec:
    if family == "custom":
        with open(payload_path) as fh:
            return FamilySpec("custom", payload=json.load(fh))
    return FamilySpec(family)


def _emit(doc) -> None:
    click.echo(export.dump_json(doc), nl=False)


def _fail(err: Exception, json_errors: bool, code: int):
    if json_errors:
        doc = {"error": type(err).__name__, "message": str(err)}
        click.echo(json.dumps(doc, sort_keys=True), err=True)
    else:
        click.echo(f"error: {err}", err=True)
    sys.exit(code)


def _guarded(fn, json_errors: bool):
    try:
        return fn()
    except (ThickEnd, DominatedEnd, DegreeMismatch) as err:
        _fail(err, json_errors, 2)
    except click.UsageError:
        raise
    except (EndtreesError, OSError, ValueError) as err:
        _fail(err, json_errors, 1)


def _parse_radii(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


family_opt = click.option("--family", "-f", required=True,
                          type=click.Choice(list(BUILTIN_FAMILIES)
                                            + ["custom"]))
payload_opt = click.option("--payload", type=click.Path(exists=True),
                           default=None, help="graph JSON for custom family")
config_opt = click.option("--config", "config_path",
                          type=click.Path(exists=True), default=None,
                          help="flat key=value config file; flags win")
json_errors_opt = click.option("--json-errors", is_flag=True, default=False)
budget_opt = click.option("--budget", type=int, default=None)


@click.group()
def main():
    """Analyze truncations of one-ended graph families."""


@main.command()
@family_opt
@payload_opt
@config_opt
@click.option("--radii", default=None)
@click.option("--cap", type=int, default=None)
@click.option("--margin", type=int, default=1)
@json_errors_opt
def analyze(family, payload, config_path, radii, cap, margin, json_errors):
    """End degree, dominating vertices, interior orbit count."""
    conf = _read_config_file(config_path)
    radii = _parse_radii(_resolve(radii, conf.get("radii"), str,
                                  ",".join(map(str, DEFAULT_RADII))))
    cap = _resolve(cap, conf.get("cap"), int, DEFAULT_CAP)
    spec = _spec(family, payload)

    def run():
        degree = end_vertex_degree(spec, radii, cap)
        dominators = find_dominating_vertices(spec, radii, cap)
        g = generate_family(spec, radii[-1])
        aut = automorphisms(g)
        orbits = orbit_count_interior(g, aut, margin)
        prev = orbit_count_interior(generate_family(spec, radii[-2]),
                                    automorphisms(
                                        generate_family(spec, radii[-2])),
                                    margin)
        # one-ended quasi-transitive graphs have thick ends: warn when the
        # data looks quasi-transitive yet the degree came out finite
        warn = degree != THICK and orbits <= 3 and orbits == prev
        _emit({"degree": degree, "dominators": list(dominators),
               "interior_orbit_count": orbits, "margin": margin,
               "quasi_transitive_thickness_warning": warn})

    _guarded(run, json_errors)


@main.command()
@family_opt
@payload_opt
@config_opt
@click.option("--radii", default=None)
@click.option("--cap", type=int, default=None)
@json_errors_opt
def degree(family, payload, config_path, radii, cap, json_errors):
    """Stabilised end vertex degree over a radius sweep."""
    conf = _read_config_file(config_path)
    radii = _parse_radii(_resolve(radii, conf.get("radii"), str,
                                  ",".join(map(str, DEFAULT_RADII))))
    cap = _resolve(cap, conf.get("cap"), int, DEFAULT_CAP)
    spec = _spec(family, payload)

    def run():
        rows = degree_sweep(spec, radii, cap)
        value = end_vertex_degree(spec, radii, cap)
        _emit({"rows": rows, "value": value,
               "stable": value != THICK})

    _guarded(run, json_errors)


@main.command()
@family_opt
@payload_opt
@config_opt
@click.option("--radii", default=None)
@click.option("--cap", type=int, default=None)
@json_errors_opt
def dominators(family, payload, config_path, radii, cap, json_errors):
    """Vertices dominating the end, detected by fan growth."""
    conf = _read_config_file(config_path)
    radii = _parse_radii(_resolve(radii, conf.get("radii"), str,
                                  ",".join(map(str, DEFAULT_RADII))))
    cap = _resolve(cap, conf.get("cap"), int, DEFAULT_CAP)
    spec = _spec(family, payload)

    def run():
        try:
            doms = find_dominating_vertices(spec, radii, cap)
            _emit({"dominators": list(doms), "stable": True})
        except Unstable as err:
            _emit({"dominators": None, "stable": False,
                   "message": str(err)})
            sys.exit(1)

    _guarded(run, json_errors)


@main.command()
@family_opt
@payload_opt
@click.option("--radius", "-r", type=int, required=True)
@click.option("--m", type=int, default=None, help="end degree override")
@click.option("--cap", type=int, default=DEFAULT_CAP)
@json_errors_opt
def separators(family, payload, radius, m, cap, json_errors):
    """Pairwise disjoint base-to-horizon separator sequence."""
    spec = _spec(family, payload)

    def run():
        value = m if m is not None else _required_degree(spec, radius, cap)
        g = generate_family(spec, radius)
        seq = disjoint_separator_sequence(g, value)
        _emit({"radius": radius, "value": value,
               "cut": [list(t) for t in seq.separators], "stable": True})

    _guarded(run, json_errors)


@main.command("enumerate-separations")
@family_opt
@payload_opt
@click.option("--radius", "-r", type=int, required=True)
@click.option("--k", type=int, default=None)
@click.option("--max-side", type=int, default=DEFAULT_MAX_SIDE)
@click.option("--cap", type=int, default=DEFAULT_CAP)
@json_errors_opt
def enumerate_separations(family, payload, radius, k, max_side, cap,
                          json_errors):
    """Relevant separations up to a side bound, one JSON object per line."""
    spec = _spec(family, payload)

    def run():
        value = k if k is not None else _required_degree(spec, radius, cap)
        g = generate_family(spec, radius)
        pool = enumerate_relevant(g, value, max_side)
        alpha = compute_alpha(g, pool) if pool else None
        for row in export.separations_to_doc(pool, alpha):
            click.echo(json.dumps(row, sort_keys=True))

    _guarded(run, json_errors)


@main.command()
@family_opt
@payload_opt
@click.option("--radius", "-r", type=int, required=True)
@click.option("--k", type=int, default=None)
@click.option("--cap", type=int, default=DEFAULT_CAP)
@json_errors_opt
def alpha(family, payload, radius, k, cap, json_errors):
    """Vertex rank table of the ranking over the full relevant pool."""
    spec = _spec(family, payload)
    if spec.name in NON_LOCALLY_FINITE:
        click.echo("warning: family is not locally finite; ranks are "
                   "truncation approximations of ordinal values", err=True)

    def run():
        value = k if k is not None else _required_degree(spec, radius, cap)
        g = generate_family(spec, radius)
        pool = relevant_pool(g, value)
        table = compute_alpha(g, pool)
        _emit({"vertex_rank": {v: table.vertex_rank[v]
                               for v in sorted(table.vertex_rank)},
               "pool_size": len(pool)})

    _guarded(run, json_errors)


def _cycles(perm: dict) -> str:
    seen = set()
    parts = []
    for v in sorted(perm):
        if v in seen or perm[v] == v:
            continue
        cyc = [v]
        seen.add(v)
        w = perm[v]
        while w != v:
            cyc.append(w)
            seen.add(w)
            w = perm[w]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


@main.command("automorphisms")
@family_opt
@payload_opt
@click.option("--radius", "-r", type=int, required=True)
@budget_opt
@json_errors_opt
def automorphisms_cmd(family, payload, radius, budget, json_errors):
    """Generators in cycle notation, orbit counts, group order."""
    spec = _spec(family, payload)

    def run():
        g = generate_family(spec, radius)
        aut = automorphisms(g, budget=_budget(budget))
        _emit({"order": aut.order,
               "generators": [_cycles(gen) for gen in aut.generators],
               "orbit_count": len(aut.orbits),
               "orbits": [list(o) for o in aut.orbits]})

    _guarded(run, json_errors)


def _required_degree(spec: FamilySpec, radius: int, cap: int) -> int:
    lo = max(2, radius - 2)
    radii = sorted({lo, max(lo + 1, radius - 1), radius})
    if len(radii) < 3:
        radii = [radius, radius + 1, radius + 2]
    value = end_vertex_degree(spec, radii, cap)
    if value == THICK:
        raise ThickEnd("end degree did not stabilise (thick end)")
    return value


def _check_undominated(spec: FamilySpec, radius: int, cap: int) -> None:
    lo = max(2, radius - 2)
    radii = sorted({lo, max(lo + 1, radius - 1), radius})
    if len(radii) < 3:
        radii = [radius, radius + 1, radius + 2]
    doms = find_dominating_vertices(spec, radii, cap)
    if doms:
        raise DominatedEnd(f"end is dominated by {list(doms)}")


def run_pipeline(spec: FamilySpec, radius: int, k_override=None,
                 cap: int = DEFAULT_CAP, budget: int | None = None):
    """Full pipeline: preconditions, pool, group, family, tree, verdict."""
    k = k_override if k_override is not None \
        else _required_degree(spec, radius, cap)
    _check_undominated(spec, radius, cap)
    g = generate_family(spec, radius)
    pool = relevant_pool(g, k, budget=_budget(budget))
    alpha_table = compute_alpha(g, pool)
    aut = automorphisms(g, budget=_budget(budget))
    fam = build_invariant_family(g, k, pool, alpha_table, aut)
    tree = build_tree(fam)
    td = build_tree_decomposition(g, fam, tree)
    verdict = verify_tree_decomposition(g, td, k)
    tail_ok, _ = tree_tail_check(tree, induced_tree_generators(tree, aut))
    verdict["tree_tail_pass"] = tail_ok
    verdict["passed"] = verdict["passed"] and tail_ok
    return g, td, verdict, k


def _write_artifacts(g, td, verdict, k, output: str) -> list[str]:
    os.makedirs(output, exist_ok=True)
    paths = {}
    paths["td.json"] = export.dump_json(
        export.tree_decomposition_to_doc(g, td, k))
    paths["td.dot"] = export.tree_to_dot(td)
    paths["truncation.dot"] = graph_to_dot(g)
    paths["report.json"] = export.dump_json(verdict)
    written = []
    for name, text in paths.items():
        full = os.path.join(output, name)
        with open(full, "w") as fh:
            fh.write(text)
        written.append(full)
    report.render_truncation(g, os.path.join(output, "truncation.png"))
    report.render_tree(td, os.path.join(output, "tree.png"))
    written += [os.path.join(output, "truncation.png"),
                os.path.join(output, "tree.png")]
    return written


@main.command("build-td")
@family_opt
@payload_opt
@config_opt
@click.option("--radius", "-r", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--cap", type=int, default=None)
@click.option("--output", "-o", default=None)
@budget_opt
@json_errors_opt
def build_td(family, payload, config_path, radius, k, cap, output, budget,
             json_errors):
    """Build, verify and export an invariant tree-decomposition."""
    conf = _read_config_file(config_path)
    radius = _resolve(radius, conf.get("radius"), int, 5)
    cap = _resolve(cap, conf.get("cap"), int, DEFAULT_CAP)
    output = _resolve(output, conf.get("output"), str, ".")
    spec = _spec(family, payload)

    def run():
        g, td, verdict, kk = run_pipeline(spec, radius, k, cap, budget)
        for path in _write_artifacts(g, td, verdict, kk, output):
            click.echo(f"wrote {path}", err=True)
        _emit(verdict)
        if not verdict["passed"]:
            sys.exit(1)

    _guarded(run, json_errors)


@main.command("verify-td")
@click.option("--input", "-i", "input_path", type=click.Path(exists=True),
              required=True)
@json_errors_opt
def verify_td(input_path, json_errors):
    """Re-verify an exported tree-decomposition document."""

    def run():
        with open(input_path) as fh:
            doc = json.load(fh)
        td, k = export.tree_decomposition_from_doc(doc)
        g = generate_family(FamilySpec(doc["family"]), doc["radius"])
        verdict = verify_tree_decomposition(g, td, k)
        _emit(verdict)
        if not verdict["passed"]:
            sys.exit(1)

    _guarded(run, json_errors)


@main.command("ray-decomposition")
@family_opt
@payload_opt
@click.option("--radius", "-r", type=int, required=True)
@click.option("--m", type=int, default=None)
@click.option("--cap", type=int, default=DEFAULT_CAP)
@json_errors_opt
def ray_decomposition_cmd(family, payload, radius, m, cap, json_errors):
    """Slab decomposition along the separator sequence."""
    spec = _spec(family, payload)

    def run():
        value = m if m is not None else _required_degree(spec, radius, cap)
        _check_undominated(spec, radius, cap)
        g = generate_family(spec, radius)
        rd = ray_decomposition(g, value)
        _emit({"m": rd.m, "slabs": [list(s) for s in rd.slabs],
               "interfaces": [list(t) for t in rd.interfaces]})

    _guarded(run, json_errors)


@main.command("export")
@family_opt
@payload_opt
@config_opt
@click.option("--radius", "-r", type=int, default=None)
@click.option("--k", type=int, default=None)
@click.option("--cap", type=int, default=None)
@click.option("--output", "-o", default=None)
@budget_opt
@json_errors_opt
def export_cmd(family, payload, config_path, radius, k, cap, output, budget,
               json_errors):
    """Run the pipeline and write all artifacts (fresh run)."""
    conf = _read_config_file(config_path)
    radius = _resolve(radius, conf.get("radius"), int, 5)
    cap = _resolve(cap, conf.get("cap"), int, DEFAULT_CAP)
    output = _resolve(output, conf.get("output"), str, ".")
    spec = _spec(family, payload)

    def run():
        g, td, verdict, kk = run_pipeline(spec, radius, k, cap, budget)
        for path in _write_artifacts(g, td, verdict, kk, output):
            click.echo(path)

    _guarded(run, json_errors)


if __name__ == "__main__":
    main()
