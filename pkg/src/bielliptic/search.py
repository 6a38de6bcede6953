"""Deterministic bounded-height point search.

Candidates are the elements c/d of K with |c_i| <= coeff_bound and
common denominator d <= denom_bound, streamed in order of naive height,
then denominator, then coefficient vector. The stream is cut into blocks
that are screened with numpy: at each degree-one site the candidate is
reduced mod p and looked up in a precomputed residuosity table. Only
survivors receive an exact square test. Screening can reject only values
that are provably nonsquares, so it never changes a report.

Blocks may be handed to worker processes; results are merged in stream
order, so reports do not depend on the number of jobs.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterator

import numpy as np

from .curves import (
    INFINITY,
    BiquadricPoint,
    BiquadricTwistCurve,
    ECPoint,
    EvenQuarticModel,
    QuarticPoint,
    QuarticTwistCurve,
    delta_phi,
)
from .errors import NotASquare, PointNotOnCurve, SqrtBudgetExceeded
from .io import element_to_json, field_to_json
from .numberfield import FieldElement, NumberField, SquareStatus, UniPoly, fe_eval, fe_is_square, fe_sqrt
from .numberfield.modular import residue_table
from .surface import (
    BiellipticSurface,
    SurfacePoint,
    descend_point,
    model_b_to_a,
)

DEFAULT_SCREEN_SITES = 16
BLOCK_ROWS = 1 << 16


@dataclass(frozen=True)
class SearchBounds:
    coeff_bound: int
    denom_bound: int = 1

    def __post_init__(self):
        if self.coeff_bound < 1 or self.denom_bound < 1:
            raise ValueError("search bounds must be >= 1")


@dataclass
class SearchReport:
    target: str
    field: NumberField
    bounds: SearchBounds
    candidates_tested: int = 0
    points_found: list = dc_field(default_factory=list)
    unknown: list = dc_field(default_factory=list)
    elapsed: float = 0.0
    exhaustive: bool = True
    notes: dict = dc_field(default_factory=dict)

    def to_json(self, include_timing: bool = True) -> dict:
        out = {
            "target": self.target,
            "field": field_to_json(self.field),
            "bounds": {"coeff_bound": self.bounds.coeff_bound, "denom_bound": self.bounds.denom_bound},
            "candidates_tested": self.candidates_tested,
            "points_found": [_point_json(p) for p in self.points_found],
            "unknown": [element_to_json(u) for u in self.unknown],
            "exhaustive": self.exhaustive,
            "notes": self.notes,
        }
        if include_timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _point_json(P) -> dict:
    if isinstance(P, QuarticPoint):
        return {"T": element_to_json(P.T), "U": element_to_json(P.U)}
    if isinstance(P, BiquadricPoint):
        return {"X": element_to_json(P.X), "Y": element_to_json(P.Y), "Z": element_to_json(P.Z)}
    if isinstance(P, SurfacePoint):
        return {
            "model": P.model,
            **{k: element_to_json(getattr(P, k)) for k in ("x", "y", "z", "t")},
        }
    raise TypeError(f"cannot serialise {P!r}")


# candidate stream


@dataclass(frozen=True)
class Block:
    height: int
    den: int
    nums: np.ndarray  # shape (rows, degree), rows in lexicographic order


def _shell(h: int, n: int, bound: int, exact: bool) -> np.ndarray:
    """Integer vectors with max|c| <= min(h, bound), restricted to
    max|c| == h when exact, in lexicographic order."""
    r = min(h, bound)
    axis = np.arange(-r, r + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1).reshape(-1, n)
    if exact:
        return grid[np.abs(grid).max(axis=1) == h]
    return grid[np.abs(grid).max(axis=1) > 0]


def iter_blocks(field: NumberField, bounds: SearchBounds, max_rows: int = BLOCK_ROWS) -> Iterator[Block]:
    n = field.degree
    B, D = bounds.coeff_bound, bounds.denom_bound
    yield Block(0, 1, np.zeros((1, n), dtype=np.int64))
    for h in range(1, max(B, D) + 1):
        for d in range(1, min(h, D) + 1):
            if d == h:
                nums = _shell(h, n, B, exact=False)
            elif h <= B:
                nums = _shell(h, n, B, exact=True)
            else:
                continue
            if d > 1:
                content = np.gcd.reduce(np.abs(nums), axis=1)
                nums = nums[np.gcd(content, d) == 1]
            for start in range(0, len(nums), max_rows):
                chunk = nums[start:start + max_rows]
                if len(chunk):
                    yield Block(h, d, chunk)


def stream_size(field: NumberField, bounds: SearchBounds) -> int:
    return sum(len(b.nums) for b in iter_blocks(field, bounds))


def enumerate_elements(field: NumberField, bounds: SearchBounds) -> Iterator[FieldElement]:
    from .numberfield.field import FieldElement as _FE

    for block in iter_blocks(field, bounds):
        for row in block.nums.tolist():
            yield _FE._make(field, row, block.den)


# modular screening


@dataclass(frozen=True)
class ScreenTarget:
    """The value multiplier * poly(candidate), required to be a square."""

    poly: UniPoly
    multiplier: FieldElement


def _site_tables(field: NumberField, targets: list[ScreenTarget], count: int):
    """Per site: (p, powers of the root mod p, boolean table over F_p of
    candidates passing every target)."""
    tables = []
    for site in field.sites(count + 1):
        p = site.p
        if p == 2:
            continue
        ok = np.ones(p, dtype=bool)
        usable = True
        squares = np.array(residue_table(p), dtype=bool)
        us = np.arange(p, dtype=np.int64)
        for tgt in targets:
            if tgt.multiplier.den % p == 0 or any(c.denominator % p == 0 for c in tgt.poly.coeffs):
                usable = False
                break
            m = tgt.multiplier.reduce(site)
            vals = np.zeros(p, dtype=np.int64)
            for c in reversed(tgt.poly.coeffs):
                cm = c.numerator * pow(c.denominator, -1, p) % p
                vals = (vals * us + cm) % p
            ok &= squares[(vals * m) % p]
        if usable:
            rpow = np.array([pow(site.root, i, p) for i in range(field.degree)], dtype=np.int64)
            tables.append((p, rpow, ok))
        if len(tables) == count:
            break
    return tables


def _screen(block: Block, tables) -> np.ndarray:
    keep = np.ones(len(block.nums), dtype=bool)
    for p, rpow, ok in tables:
        if block.den % p == 0:
            continue
        u = (block.nums % p) @ rpow % p
        u = u * pow(block.den, -1, p) % p
        keep &= ok[u]
        if not keep.any():
            break
    return keep


@dataclass(frozen=True)
class _Task:
    block: Block
    targets: tuple[ScreenTarget, ...]
    tables: tuple


def _survivors(task: _Task) -> list[FieldElement]:
    from .numberfield.field import FieldElement as _FE

    keep = _screen(task.block, task.tables)
    field = task.targets[0].multiplier.field
    return [_FE._make(field, row, task.block.den) for row in task.block.nums[keep].tolist()]


def _classify(task: _Task) -> list[tuple[FieldElement, list]]:
    """Exact tests on survivors; returns (candidate, [SquareTest per target])."""
    out = []
    for cand in _survivors(task):
        results = []
        for tgt in task.targets:
            value = tgt.multiplier * fe_eval(tgt.poly, cand)
            res = fe_is_square(value)
            results.append(res)
            if res.status is SquareStatus.NONSQUARE:
                break
        out.append((cand, results))
    return out


def _run(field: NumberField, bounds: SearchBounds, targets: list[ScreenTarget],
         jobs: int = 1, screen_count: int = DEFAULT_SCREEN_SITES):
    """Yield (candidate, results) for every screen survivor, in stream order."""
    tables = tuple(_site_tables(field, targets, screen_count))
    tasks = (_Task(b, tuple(targets), tables) for b in iter_blocks(field, bounds))
    if jobs <= 1:
        for task in tasks:
            yield from _classify(task)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(_classify, tasks, chunksize=1):
                yield from chunk


def _all_square(results) -> bool:
    return len(results) > 0 and all(r.status is SquareStatus.SQUARE for r in results)


def _any_unknown(results) -> bool:
    return any(r.status is SquareStatus.UNKNOWN for r in results)


# searches on the curves


def search_quartic(C: QuarticTwistCurve, bounds: SearchBounds, jobs: int = 1,
                   screen_count: int = DEFAULT_SCREEN_SITES) -> SearchReport:
    """Points (T, U) on a*U^2 = g(T) with T in the candidate stream."""
    start = time.perf_counter()
    report = SearchReport("quartic", C.field, bounds)
    report.notes["a"] = element_to_json(C.a)
    report.notes["g"] = [str(c) for c in C.g.coeffs]
    a_inv = C.a.inv()
    for T, results in _run(C.field, bounds, [ScreenTarget(C.g, C.a)], jobs, screen_count):
        if _all_square(results):
            U = results[0].witness * a_inv
            P = QuarticPoint(T, U)
            assert C.contains(P)
            report.points_found.append(P)
        elif _any_unknown(results):
            report.unknown.append(T)
    report.candidates_tested = stream_size(C.field, bounds)
    report.exhaustive = not report.unknown
    report.elapsed = time.perf_counter() - start
    return report


def search_biquadric(D: BiquadricTwistCurve, bounds: SearchBounds, jobs: int = 1,
                     screen_count: int = DEFAULT_SCREEN_SITES) -> SearchReport:
    """Affine points (X, Y, Z) on D^a, one per X (canonical square roots)."""
    start = time.perf_counter()
    report = SearchReport("biquadric", D.field, bounds)
    report.notes["a"] = element_to_json(D.a)
    a_inv = D.a.inv()
    targets = [ScreenTarget(D.p, D.a), ScreenTarget(D.q, D.a)]
    for X, results in _run(D.field, bounds, targets, jobs, screen_count):
        if _all_square(results):
            P = BiquadricPoint(X, results[0].witness * a_inv, results[1].witness * a_inv)
            assert D.contains(P)
            report.points_found.append(P)
        elif _any_unknown(results):
            report.unknown.append(X)
    report.candidates_tested = stream_size(D.field, bounds)
    report.exhaustive = not report.unknown
    report.elapsed = time.perf_counter() - start
    return report


def search_surface(S: BiellipticSurface, field: NumberField, bounds: SearchBounds, jobs: int = 1,
                   screen_count: int = DEFAULT_SCREEN_SITES) -> SearchReport:
    """All (x, t) pairs in the candidate stream squared with g(t)p(x) and
    g(t)q(x) both squares.

    Off the branch locus both are squares iff p(x)q(x) is a square and
    g(t)p(x) is a square, so the x-stream is first filtered by the
    curve W^2 = p(x)q(x) and the t-stream is searched only above the
    surviving x. Pairs with p(x) = 0, q(x) = 0 or g(t) = 0 are handled
    separately. The report counts every pair as tested.
    """
    start = time.perf_counter()
    S = S.base_change(field)
    report = SearchReport("surface", field, bounds)
    n_stream = stream_size(field, bounds)
    one = field.one

    # x with p(x)q(x) a square, or on the branch locus p(x)q(x) = 0
    x_classes = []
    for x, results in _run(field, bounds, [ScreenTarget(S.p * S.q, one)], jobs, screen_count):
        px, qx = fe_eval(S.p, x), fe_eval(S.q, x)
        if px.is_zero() or qx.is_zero():
            x_classes.append((x, qx if px.is_zero() else px))
        elif _all_square(results):
            x_classes.append((x, px))
        elif _any_unknown(results):
            report.unknown.append(x)

    # t with g(t) = 0 give points above every x
    g_roots = [t for t, _ in _run(field, bounds, [ScreenTarget(S.g, one)], jobs, screen_count)
               if fe_eval(S.g, t).is_zero()]

    found: list[SurfacePoint] = []
    for x, mult in x_classes:
        px, qx = fe_eval(S.p, x), fe_eval(S.q, x)
        for t, results in _run(field, bounds, [ScreenTarget(S.g, mult)], jobs, screen_count):
            gt = fe_eval(S.g, t)
            if gt.is_zero():
                continue  # covered by g_roots
            if _all_square(results):
                y = results[0].witness if not px.is_zero() else field.zero
                if px.is_zero():
                    z = results[0].witness
                elif qx.is_zero():
                    z = field.zero
                else:
                    z = y * fe_sqrt(qx * px.inv())
                found.append(SurfacePoint(x, y, z, t, "B"))
            elif _any_unknown(results):
                report.unknown.append(t)
    if g_roots:
        for x in enumerate_elements(field, bounds):
            for t in g_roots:
                found.append(SurfacePoint(x, field.zero, field.zero, t, "B"))

    for P in found:
        assert S.contains(P)
        try:
            P = model_b_to_a(S, P)
            assert S.contains(P)
        except Exception:  # branch locus: keep the model B point
            pass
        report.points_found.append(P)
    report.candidates_tested = n_stream * n_stream
    report.notes.update(
        x_candidates=n_stream,
        t_candidates=n_stream,
        x_with_pq_square=len(x_classes),
        strategy="x filtered by W^2 = p(x)q(x), then t searched above each surviving x",
    )
    report.exhaustive = not report.unknown
    report.elapsed = time.perf_counter() - start
    return report


# twist classes from known points of D'


def _class_rep_key(e: FieldElement):
    return (e.height(), e.den, e.num)


def twist_classes(model: EvenQuarticModel, generators: list[ECPoint], n_max: int,
                  torsion: list[ECPoint] | None = None) -> list[FieldElement]:
    """Distinct classes delta(sum c_i G_i + T) with |c_i| <= n_max and T in
    the given torsion points (default: O and (0, 0))."""
    E = model.curve
    for P in generators:
        if not E.contains(P):
            raise PointNotOnCurve(f"{P} is not on {E}")
    if torsion is None:
        torsion = [INFINITY, model.two_torsion]
    coeff_range = range(-n_max, n_max + 1)
    multiples = [{c: E.mul(c, G) for c in coeff_range} for G in generators]
    reps: list[FieldElement] = []
    for combo in itertools.product(coeff_range, repeat=len(generators)):
        base = INFINITY
        for mult, c in zip(multiples, combo):
            base = E.add(base, mult[c])
        for T in torsion:
            d = delta_phi(model, E.add(base, T))
            for i, r in enumerate(reps):
                if fe_is_square(r * d).is_square:
                    if _class_rep_key(d) < _class_rep_key(r):
                        reps[i] = d
                    break
            else:
                reps.append(d)
    return sorted(reps, key=_class_rep_key)


# density


def density_points(S: BiellipticSurface, generator: ECPoint, a: FieldElement,
                   c_point: QuarticPoint, count: int) -> list[SurfacePoint]:
    """Surface points from odd multiples m*G of a generator of D'(K) whose
    class is a, paired with a fixed point on C^a."""
    if count <= 0:
        return []
    model = S.dprime
    E = model.curve
    C = QuarticTwistCurve(S.field, a, S.g)
    if not C.contains(c_point):
        raise PointNotOnCurve("c_point is not on C^a")
    if not E.contains(generator):
        raise PointNotOnCurve("generator is not on D'")
    if not fe_is_square(delta_phi(model, generator) * a).is_square:
        raise ValueError("generator's class differs from a")
    a_inv = a.inv()
    twoG = E.add(generator, generator)
    P = generator
    out: list[SurfacePoint] = []
    seen = set()
    while len(out) < count:
        if P.is_infinity:
            raise ValueError("generator has finite order")
        qp = model.from_weierstrass(P)
        if not qp.is_infinite:
            X, W = qp.u, qp.v
            try:
                Y = fe_sqrt(fe_eval(S.p, X) * a_inv)
            except NotASquare as exc:
                raise SqrtBudgetExceeded(f"square root failed at x = {X}") from exc
            Z = W * (a * Y).inv()
            sp = model_b_to_a(S, descend_point(S, a, c_point, BiquadricPoint(X, Y, Z)))
            if not S.contains(sp):
                raise ArithmeticError("density point is not on S")
            if X not in seen:
                seen.add(X)
                out.append(sp)
        P = E.add(P, twoG)
    return out
