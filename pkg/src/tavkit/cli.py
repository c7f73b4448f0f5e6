"""Command-line entry point: ``tav``.

Exit codes: 0 success, 2 input error, 3 vanished (tap compute/certify),
4 search cap exceeded.
"""

import json
import os
import sys
from pathlib import Path

import click

from . import census as cen
from .exact import factorize, is_squarefree

EXIT_INPUT = 2
EXIT_VANISHED = 3
EXIT_CAP = 4


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


def _read(arg):
    """Text of a path, of stdin for '-', or the argument itself."""
    if arg == "-":
        return sys.stdin.read()
    if arg.lstrip()[:1] in ("{", "[") or "\n" in arg:
        return arg
    try:
        p = Path(arg)
        if p.is_file():
            return p.read_text()
    except OSError:
        pass
    return arg


def _json_arg(arg, what):
    try:
        return json.loads(_read(arg))
    except (json.JSONDecodeError, OSError) as exc:
        raise InputError(f"cannot parse {what}: {exc}")


def _emit(obj, fmt="json"):
    if fmt == "json":
        click.echo(json.dumps(obj, indent=1, sort_keys=True, default=str))
    else:
        click.echo(obj)


def _load_pres(arg):
    from .fpgroup import Presentation
    try:
        return Presentation.load(_read(arg))
    except (ValueError, KeyError) as exc:
        raise InputError(f"cannot parse presentation: {exc}")


def _load_group(arg):
    from .fingroup import cyclic, from_spec
    if arg is None:
        return cyclic(1)
    try:
        return from_spec(_json_arg(arg, "group spec"))
    except ValueError as exc:
        raise InputError(str(exc))


def _load_images(arg, pres, group):
    if arg is None:
        return [group.identity] * pres.ngens
    obj = _json_arg(arg, "hom")
    images = obj["images"] if isinstance(obj, dict) else obj
    if len(images) != pres.ngens:
        raise InputError(f"hom has {len(images)} images for {pres.ngens} generators")
    return [int(x) for x in images]


def _load_rep(arg, group):
    from .reps import regular_rep, rep_from_json, trivial_rep
    if arg == "regular":
        return regular_rep(group)
    if arg == "trivial":
        return trivial_rep(group)
    try:
        return rep_from_json(_json_arg(arg, "representation"), group)
    except (ValueError, KeyError) as exc:
        raise InputError(f"bad representation: {exc}")


@click.group()
@click.option("--threads", type=int, default=None, help="Worker threads (else TAV_THREADS).")
def main(threads):
    """Twisted Alexander vanishing workbench."""
    if threads is not None:
        if threads < 1:
            raise InputError("--threads must be positive")
        os.environ["TAV_THREADS"] = str(threads)


# -- census ------------------------------------------------------------------------------

@main.group()
def census():
    """Counts of groups and TAV groups of a given order."""


def _squarefree_or_fail(n):
    if n < 1 or not is_squarefree(n):
        raise InputError(f"{n} is not square-free")


@census.command("count")
@click.argument("n", type=int)
@click.option("--check", is_flag=True, help="Compare with the structural enumeration.")
def census_count(n, check):
    """Number of groups of square-free order N (Hoelder)."""
    _squarefree_or_fail(n)
    c = cen.holder_count(n)
    click.echo(c)
    if check:
        e = len(cen.enumerate_squarefree(n))
        click.echo("check OK" if e == c else f"check FAILED: enumeration gives {e}")
        if e != c:
            sys.exit(1)


@census.command("tav")
@click.argument("n", type=int)
@click.option("--check", is_flag=True, help="Compare with the structural enumeration.")
@click.option("--variant", type=click.Choice(["theorem", "table"]), default="theorem")
def census_tav(n, check, variant):
    """Number of TAV groups of order N where a count is known."""
    if n < 1:
        raise InputError("order must be positive")
    f = factorize(n)
    if sorted(f.values()) == [1, 1, 2]:
        p = next(x for x in f if f[x] == 2)
        q, r = sorted(x for x in f if f[x] == 1)
        count, reason = cen.count_tav_p2qr(p, q, r, variant), "p^2 q r"
    else:
        count, reason = cen.stratum_status(n)
    if count is None:
        click.echo(f"unknown ({reason})")
        return
    click.echo(count)
    if check:
        _squarefree_or_fail(n)
        e = len(cen.tav_filter(cen.enumerate_squarefree(n)))
        click.echo("check OK" if e == count else f"check FAILED: enumeration gives {e}")
        if e != count:
            sys.exit(1)


@census.command("list")
@click.argument("n", type=int)
@click.option("--tav", "only_tav", is_flag=True, help="Only TAV groups.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
def census_list(n, only_tav, fmt):
    """All groups of square-free order N as (m, H) parameters."""
    _squarefree_or_fail(n)
    rows = cen.enumerate_squarefree(n)
    if only_tav:
        rows = cen.tav_filter(rows)
    if fmt == "json":
        _emit([r.to_json() for r in rows])
        return
    for r in rows:
        click.echo(f"m={r.m} H={list(r.h)} derived={r.derived} tav={'yes' if r.tav else 'no'}")


# -- groups ------------------------------------------------------------------------------

@main.group()
def group():
    """Finite group queries."""


def _structural_report(spec):
    n, m, h = int(spec["n"]), int(spec["m"]), [int(x) for x in spec["h"]]
    qs = sorted(factorize(m)) if m > 1 else []
    derived = 1
    for q, e in zip(qs, h):
        if e % (q - 1):
            derived *= q
    return {"order": n, "derived_order": derived, "center_order": None,
            "weight_one": True, "witness": None, "tav": len(factorize(derived)) >= 2,
            "seed": None, "structural": True}


@group.command("analyze")
@click.argument("spec")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
def group_analyze(spec, fmt):
    """Order, G', Z(G), weight-one witness, TAV and seed verdicts."""
    from .fingroup import (center, derived_subgroup, from_spec, is_seed, is_tav,
                           weight_is_one)
    obj = _json_arg(spec, "group spec")
    if obj.get("kind") == "metacyclic_holder" and int(obj.get("n", 0)) > 2000:
        rep = _structural_report(obj)
    else:
        try:
            g = from_spec(obj)
        except ValueError as exc:
            raise InputError(str(exc))
        ok, wit = weight_is_one(g)
        rep = {"order": g.order, "derived_order": derived_subgroup(g).order,
               "center_order": center(g).order, "weight_one": ok,
               "witness": None if wit is None else str(g.label(wit)),
               "tav": is_tav(g), "seed": is_seed(g) if ok else None}
    if fmt == "json":
        _emit(rep)
        return
    yn = {True: "yes", False: "no", None: "n/a"}
    click.echo(f"order: {rep['order']}")
    click.echo(f"derived subgroup order: {rep['derived_order']}")
    if rep["center_order"] is not None:
        click.echo(f"center order: {rep['center_order']}")
    click.echo(f"weight one: {yn[rep['weight_one']]}" +
               (f" (witness {rep['witness']})" if rep["witness"] is not None else ""))
    click.echo(f"TAV: {yn[rep['tav']]}")
    click.echo(f"seed: {yn[rep['seed']]}")


# -- knots -------------------------------------------------------------------------------

@main.group()
def knot():
    """Knot presentations from braids, PD codes, torus knots and satellites."""


def _emit_pres(p, fmt):
    if fmt == "json":
        _emit(p.to_json())
    else:
        click.echo(p.to_text(), nl=False)


def _braid(word, strands):
    from .knots import BraidWord
    try:
        return BraidWord.parse(word, strands)
    except ValueError as exc:
        raise InputError(str(exc))


@knot.command("braid")
@click.argument("word")
@click.option("--strands", type=int, required=True)
@click.option("--pd", "as_pd", is_flag=True, help="Print the PD code instead.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
def knot_braid(word, strands, as_pd, fmt):
    """Wirtinger presentation of a braid closure."""
    from .knots import braid_closure_presentation, braid_pd
    b = _braid(word, strands)
    if as_pd:
        _emit(braid_pd(b).to_json())
        return
    _emit_pres(braid_closure_presentation(b, knot=b.is_knot()), fmt)


def _load_pd(arg):
    from .knots import PDCode
    try:
        return PDCode.from_json(_json_arg(arg, "PD code"))
    except (ValueError, KeyError) as exc:
        raise InputError(str(exc))


@knot.command("pd")
@click.argument("code")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
def knot_pd(code, fmt):
    """Wirtinger presentation from a PD code (file or JSON)."""
    from .knots import knot_presentation, pd_wirtinger
    pd = _load_pd(code)
    _emit_pres(knot_presentation(pd) if len(pd.components) == 1 else pd_wirtinger(pd), fmt)


@knot.command("torus")
@click.argument("p", type=int)
@click.argument("q", type=int)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
def knot_torus(p, q, fmt):
    """Two-generator presentation of the torus knot T(p, q)."""
    from .knots import torus_presentation
    try:
        pres = torus_presentation(p, q)
    except ValueError as exc:
        raise InputError(str(exc))
    _emit_pres(pres, fmt)


@knot.command("encircle")
@click.option("--pd", "code", required=True)
@click.option("--level", type=int)
@click.option("--position", type=int)
@click.option("--list", "list_slots", is_flag=True, help="List admissible (level, position).")
def knot_encircle(code, level, position, list_slots):
    """Add an unknotted loop around two antiparallel strands."""
    from .knots import antiparallel_slots, encircle
    pd = _load_pd(code)
    if list_slots:
        _emit([list(s) for s in antiparallel_slots(pd)])
        return
    if level is None or position is None:
        raise InputError("--level and --position are required")
    try:
        _emit(encircle(pd, level, position).to_json())
    except ValueError as exc:
        raise InputError(str(exc))


@knot.command("satellite")
@click.option("--pd", "code", required=True, help="PD code of the pattern knot.")
@click.option("--level", type=int, required=True)
@click.option("--position", type=int, required=True)
@click.option("--companion", default=None, help="Presentation of J with marks.")
@click.option("--companion-torus", nargs=2, type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
def knot_satellite(code, level, position, companion, companion_torus, fmt):
    """Satellite K(alpha, J) of a pattern knot."""
    from .knots import pattern_link, satellite_glue, torus_presentation
    pd = _load_pd(code)
    if (companion is None) == (not companion_torus):
        raise InputError("give exactly one of --companion and --companion-torus")
    try:
        j = torus_presentation(*companion_torus) if companion_torus else _load_pres(companion)
        sat = satellite_glue(pattern_link(pd, level, position), j)
    except ValueError as exc:
        raise InputError(str(exc))
    _emit_pres(sat, fmt)


# -- homs --------------------------------------------------------------------------------

@main.command("homs")
@click.option("--pres", "pres_arg", default="-")
@click.option("--group", "group_arg", required=True)
@click.option("--epi", is_flag=True)
@click.option("--meridian-image", type=int, default=None)
@click.option("--modulo-conjugacy", is_flag=True)
@click.option("--cap", type=int, default=10 ** 7)
def homs(pres_arg, group_arg, epi, meridian_image, modulo_conjugacy, cap):
    """Homomorphisms from a presentation to a finite group (JSON image arrays)."""
    from .homsearch import SearchCapExceeded, wirtinger_homs
    p = _load_pres(pres_arg)
    g = _load_group(group_arg)
    try:
        hs = wirtinger_homs(p, g, meridian_image=meridian_image, epi=epi, cap=cap,
                            modulo_conjugacy=modulo_conjugacy)
    except SearchCapExceeded as exc:
        click.echo(json.dumps({"partial": True, "error": str(exc)}))
        sys.exit(EXIT_CAP)
    _emit([h.images for h in hs])


# -- twisted Alexander -----------------------------------------------------------------

@main.group()
def tap():
    """Twisted Alexander polynomials."""


def _tap_inputs(pres_arg, group_arg, hom_arg, rep_arg):
    p = _load_pres(pres_arg)
    g = _load_group(group_arg)
    images = _load_images(hom_arg, p, g)
    rep = _load_rep(rep_arg, g)
    return p, g, images, rep


_tap_options = [
    click.option("--pres", "pres_arg", default="-"),
    click.option("--group", "group_arg", default=None),
    click.option("--hom", "hom_arg", default=None),
    click.option("--rep", "rep_arg", default="regular"),
    click.option("--no-simplify", is_flag=True),
]


def _with_tap_options(f):
    for opt in reversed(_tap_options):
        f = opt(f)
    return f


@tap.command("compute")
@_with_tap_options
def tap_compute(pres_arg, group_arg, hom_arg, rep_arg, no_simplify):
    """Wada's invariant and the H_1-order polynomial as JSON."""
    from .twisted import twisted_alexander
    p, g, images, rep = _tap_inputs(pres_arg, group_arg, hom_arg, rep_arg)
    try:
        r = twisted_alexander(p, g, images, rep, simplify=not no_simplify)
    except ValueError as exc:
        raise InputError(str(exc))
    out = r.to_json()
    out.pop("certificate", None)
    out["polynomial_text"] = None if r.polynomial is None else repr(r.polynomial)
    _emit(out)
    if r.vanished:
        sys.exit(EXIT_VANISHED)


@tap.command("certify")
@_with_tap_options
def tap_certify(pres_arg, group_arg, hom_arg, rep_arg, no_simplify):
    """Vanishing certificate or nonvanishing witness, re-verified."""
    from .twisted import twisted_alexander
    p, g, images, rep = _tap_inputs(pres_arg, group_arg, hom_arg, rep_arg)
    try:
        r = twisted_alexander(p, g, images, rep, simplify=not no_simplify, numerator=False)
    except ValueError as exc:
        raise InputError(str(exc))
    if r.vanished:
        cert = r.certificate
        out = {"vanished": True, "verified": cert.verify(p, g, images, rep),
               "certificate": cert.to_json()}
    else:
        w = r.witness
        out = {"vanished": False,
               "verified": w.verify(r.presentation, g, r.images, rep, r.phi),
               "witness": w.to_json()}
    _emit(out)
    if r.vanished:
        sys.exit(EXIT_VANISHED)


@tap.command("order")
@click.option("--pres", "pres_arg", default="-")
@click.option("--max", "max_order", type=int, required=True)
@click.option("--catalog", default=None, help="JSON list of group specs for open strata.")
@click.option("--cap", type=int, default=10 ** 7)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
def tap_order(pres_arg, max_order, catalog, cap, fmt):
    """Smallest TAV group order of a knot up to --max."""
    from .fingroup import from_spec
    from .twisted import tav_order_search
    p = _load_pres(pres_arg)
    groups = None
    if catalog is not None:
        try:
            groups = [from_spec(s) for s in _json_arg(catalog, "catalog")]
        except ValueError as exc:
            raise InputError(str(exc))
    rep = tav_order_search(p, max_order, groups, cap=cap)
    if fmt == "json":
        _emit(rep)
    else:
        click.echo(rep["order"] if rep["order"] is not None else "none")
        for e in rep["strata"]:
            gs = ", ".join(f"{x['group']}: {x['epimorphisms']} epis, "
                           f"{'vanishing' if x['vanishing'] else 'nonvanishing'}"
                           for x in e["groups"])
            click.echo(f"  order {e['order']}: {e['status']} ({e['reason']})" +
                       (f" [{gs}]" if gs else ""))
    if rep["partial"]:
        sys.exit(EXIT_CAP)


@tap.command("divcheck")
@click.argument("word")
@click.option("--strands", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--group", "group_arg", required=True)
@click.option("--hom", "hom_arg", default=None, help="Images on closure(b); default all homs.")
@click.option("--rep", "rep_arg", default="regular")
def tap_divcheck(word, strands, k, group_arg, hom_arg, rep_arg):
    """Does the invariant of closure(b) divide that of closure(b^k)?"""
    from .homsearch import wirtinger_homs
    from .knots import braid_closure_presentation
    from .twisted import braid_power_divisibility_check
    b = _braid(word, strands)
    try:
        p = braid_closure_presentation(b)
    except ValueError as exc:
        raise InputError(str(exc))
    g = _load_group(group_arg)
    rep = _load_rep(rep_arg, g)
    homs = [_load_images(hom_arg, p, g)] if hom_arg else [h.images for h in wirtinger_homs(p, g)]
    ok = True
    for images in homs:
        try:
            res = braid_power_divisibility_check(b, k, g, images, rep)
        except ValueError as exc:
            raise InputError(str(exc))
        ok = ok and res
    click.echo(f"divides: {'yes' if ok else 'no'} ({len(homs)} homs)")
    if not ok:
        sys.exit(1)


if __name__ == "__main__":
    main()
