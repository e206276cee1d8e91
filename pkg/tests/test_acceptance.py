"""End-to-end acceptance criteria, each with its tolerance and time budget.

Every test records one ``PASS``/``FAIL`` line that pytest prints in an
"acceptance criteria" section at the end of the run.
"""

import json
import math
import time

import numpy as np
import pytest

from symdec import bounds, dual, example_d2, family, welch
from symdec.cli import main
from symdec.construct import build_basis, build_family, psd_window, recover_x, v_matrix

from conftest import I2, random_pd, random_psd_unit, tr


class Criterion:
    def __init__(self, log, number, title, budget):
        self.log, self.number, self.title, self.budget = log, number, title, budget
        self.failures = []

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if elapsed >= self.budget:
            self.failures.append(f"runtime {elapsed:.2f}s exceeds {self.budget}s")
        status = "PASS" if not self.failures else "FAIL"
        detail = "" if not self.failures else " -- " + "; ".join(self.failures[:3])
        self.log.append(f"[{status}] {self.number}. {self.title} ({elapsed:.2f}s / {self.budget}s){detail}")
        if exc is None and self.failures:
            pytest.fail("; ".join(self.failures))
        return False


def test_criterion_1_sic_reproduction(acceptance_log, tmp_path, capsys):
    with Criterion(acceptance_log, 1, "SIC reproduction", 1.0) as c:
        out = tmp_path / "sic.json"
        code = main(["construct", "--T", "identity:2", "--N", "4", "--x-mode", "exact", "-o", str(out)])
        capsys.readouterr()
        c.check(code == 0, f"exit {code}")
        data = json.loads(out.read_text())
        x = data["window"]["x_exact"]
        a = data["window"]["a_exact"]
        c.check(abs(x - math.sqrt(2) / 4) <= 1e-9, f"x_exact = {x}")
        c.check(abs(a - 0.25) <= 1e-9, f"a = {a}")
        basis = build_basis(I2, 4)
        for m in build_family(basis, x).members:
            ev = np.linalg.eigvalsh(m)
            c.check(ev[0] >= -1e-9, f"member not PSD: {ev}")
            c.check(abs(ev[0]) <= 1e-9, f"second eigenvalue {ev[0]}")
            c.check(abs(np.trace(m).real - 0.5) <= 1e-9, "trace != 1/2")


def test_criterion_2_identity_bound_chain(acceptance_log):
    with Criterion(acceptance_log, 2, "bound chain for T = I_d, N = d^2", 1.0) as c:
        for d in range(2, 7):
            rep = bounds.a_bounds(np.eye(d, dtype=complex), d * d)
            c.check(abs(rep.a_lower - d**-3) <= 1e-12, f"d={d}: a_lower {rep.a_lower}")
            c.check(abs(rep.a_upper_psd - d**-2) <= 1e-12, f"d={d}: a_upper_psd {rep.a_upper_psd}")


def test_criterion_3_example_sweep(acceptance_log):
    with Criterion(acceptance_log, 3, "example sweep over u in [1, 3]", 30.0) as c:
        rows = example_d2.sweep(1.0, 3.0, 201)
        c.check(len(rows) == 201, "row count")
        for r in rows:
            s = r.u * r.u + 1
            lb = s / 16 + 27 * s / (4 * (5 * r.u + math.sqrt(r.u * (29 * r.u + 50) + 29) - 5) ** 2)
            c.check(abs(r.a_lb - lb) <= 1e-12, f"a_lb at u={r.u}")
            c.check(abs(r.a_ub - s * s / 16) <= 1e-12, f"a_ub at u={r.u}")
            c.check(abs(r.a_opt_search - r.a_opt_closed) <= 1e-7, f"a_opt at u={r.u}")
            if r.u >= 1.01:
                c.check(r.a_ub - r.a_lb > 1e-6, f"a_lb = a_ub at u={r.u}")
        c.check(abs(rows[0].a_ub - rows[0].a_lb) <= 1e-12, "no equality at u = 1")
        gap = max(r.gap for r in rows)
        c.check(gap <= 0.00491403 + 1e-6, f"max gap {gap}")


def test_criterion_4_eigenvalue_formulas(acceptance_log):
    with Criterion(acceptance_log, 4, "closed-form eigenvalues of R_1..R_4", 5.0) as c:
        for u in np.linspace(1.0, 3.0, 100):
            basis = example_d2.example_basis(float(u))
            for r, (hi, lo) in zip(basis.R, example_d2.closed_form_spectra(float(u))):
                ev = np.linalg.eigvalsh(r)
                c.check(abs(ev[1] - hi) <= 1e-9 and abs(ev[0] - lo) <= 1e-9, f"u={u}")


def test_criterion_5_phi_oracle(acceptance_log):
    with Criterion(acceptance_log, 5, "phi closed form vs oracle", 60.0) as c:
        rng = np.random.default_rng(20240501)
        for k in range(50):
            d = int(rng.integers(2, 7))
            b = rng.uniform(0.05, 5.0, d)
            res = bounds.phi_oracle(b, trials=1000, seed=k)
            phi = bounds.phi_closed_form(b)
            c.check(abs(res.value - phi) <= 1e-7, f"spectrum {k}: {res.value} vs {phi}")
            c.check(res.witness_orthogonality <= 1e-9 and abs(res.witness_norm - 1) <= 1e-9, "witness infeasible")
            c.check(res.sampled_min >= phi - 1e-9 and res.violations == 0, f"spectrum {k} beaten")


def test_criterion_6_duality(acceptance_log):
    with Criterion(acceptance_log, 6, "duality suite", 5.0) as c:
        rng = np.random.default_rng(6)
        for k in range(20):
            d = int(rng.integers(2, 4))
            n = int(rng.integers(2, d * d + 1))
            T = random_pd(d, rng)
            basis = build_basis(T, n, k)
            fam = build_family(basis, 0.8 * psd_window(basis).x_exact)
            dl = dual.dual_of_decomposition(fam, T)
            c.check(dual.biorthogonality_error(fam, dl) <= 1e-9, f"biorthogonality {k}")
            nd = dual.normalized_dual(fam, T)
            c.check(family.verify_decomposition(nd, T, 1e-9).decomposes, f"normalized dual {k}")
            back = dual.dual_family(dl)
            err = max(np.linalg.norm(a - b) for a, b in zip(back.members, fam.members))
            c.check(err <= 1e-8, f"double dual {k}: {err}")
        sic = build_family(build_basis(I2, 4), math.sqrt(2) / 4)
        sd = dual.dual_of_decomposition(sic, I2)
        c.check(abs(sd.a_fit - 5) <= 1e-9 and abs(sd.b_fit + 1) <= 1e-9, f"SIC dual ({sd.a_fit}, {sd.b_fit})")
        c.check(abs(dual.normalized_dual(sic, I2).a_fit - 1.25) <= 1e-9, "SIC a_hat")


def test_criterion_7_welch(acceptance_log):
    with Criterion(acceptance_log, 7, "Welch property suite", 60.0) as c:
        rng = np.random.default_rng(7)
        for k in range(500):
            d = int(rng.integers(1, 5))
            n = int(rng.integers(max(2, d), 11))
            ms = [random_psd_unit(d, rng) for _ in range(n)]
            v = rng.uniform(0.05, 3.0, n)
            c.check(welch.weighted_welch(ms, v).slack >= -1e-9, f"weighted {k}")
            # [v] >= d; flat weights always qualify since n >= d
            va = rng.uniform(0.5, 1.0, n)
            if va.sum() ** 2 / (va @ va) < d:
                va = np.ones(n)
            p = float(rng.uniform(1.1, 4.0))
            c.check(welch.holder_welch(ms, va, p).slack >= -1e-9, f"holder {k}")
            m = welch.min_angle_bound(ms, va)
            c.check(m.slack >= -1e-9 and m.extra["flat_dominates"], f"min angle {k}")
        sic = [2 * m for m in build_family(build_basis(I2, 4), math.sqrt(2) / 4).members]
        for rep in (welch.weighted_welch(sic), welch.holder_welch(sic, None, 2.0), welch.min_angle_bound(sic)):
            c.check(rep.equality and abs(rep.slack) <= 1e-9, "SIC equality")
        h = welch.holder_welch(sic, None, 2.0)
        c.check(abs(h.rhs - 4 / 3) <= 1e-12 and abs(welch.flat_square_bound(4, 2) - 4 / 3) <= 1e-15, "4/3")


def test_criterion_8_construction_invariants(acceptance_log):
    with Criterion(acceptance_log, 8, "construction invariants", 30.0) as c:
        rng = np.random.default_rng(8)
        for k in range(200):
            d = int(rng.integers(2, 5))
            n = int(rng.integers(2, d * d + 1))
            T = random_pd(d, rng)
            basis = build_basis(T, n, k)
            R = basis.R
            c.check(np.linalg.norm(sum(R)) <= 1e-9, f"sum R {k}")
            g = np.array([[tr(a, b) for b in R] for a in R])
            want = np.where(np.eye(n, dtype=bool), 1.0, -1.0 / (n - 1))
            c.check(np.max(np.abs(g - want)) <= 1e-9, f"R gram {k}")
            c.check(max(abs(tr(r, T)) for r in R) <= 1e-9, f"R orth T {k}")
            v = v_matrix(n)
            c.check(np.allclose(v.T @ v, n / (n - 1) * np.eye(n - 1), atol=1e-9, rtol=0), f"V {k}")
            x = float(rng.uniform(0, 1))
            xs = recover_x(build_family(basis, x).members, T)
            c.check(max(abs(xi - x) for xi in xs) <= 1e-9, f"x roundtrip {k}")


def test_criterion_9_structural_checks(acceptance_log):
    with Criterion(acceptance_log, 9, "projection, rank-one and locality checks", 5.0) as c:
        rng = np.random.default_rng(9)
        for k in range(10):
            d = int(rng.integers(2, 4))
            # projection T: both directions hold
            q, _ = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
            r = int(rng.integers(1, d + 1))
            P = q[:, :r] @ q[:, :r].conj().T
            w = rng.dirichlet(np.ones(3))
            rep = family.check_projection_characterization([wi * P for wi in w], P)
            c.check(rep.is_projection and rep.consistent, f"projection {k}")
            # non-projection T: absorption fails too
            T = random_pd(d, rng)
            basis = build_basis(T, d * d, k)
            fam = build_family(basis, psd_window(basis).x_sufficient)
            rep = family.check_projection_characterization(fam, T)
            c.check(not rep.is_projection and rep.consistent, f"non-projection {k}")
            # rank one
            vec = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            T1 = np.outer(vec, vec.conj())
            ws = rng.dirichlet(np.ones(int(rng.integers(2, 6))))
            members = [wi * T1 for wi in ws]
            r1 = family.check_rank_one_T(members, T1)
            dec = family.verify_decomposition(members, T1)
            c.check(r1.proportional and dec.degenerate, f"rank one {k}")
            c.check(abs(sum(dec.degenerate_weights) - 1) <= 1e-10, f"weights sum {k}")
            # locality on exact decompositions
            samples = [rng.standard_normal(d) + 1j * rng.standard_normal(d) for _ in range(4)]
            loc = family.check_local_decomposition(fam, T, samples)
            c.check(abs(loc.beta - 1) <= 1e-8 and loc.is_local, f"beta {k}: {loc.beta}")
