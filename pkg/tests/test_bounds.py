"""Remainder-bound constants, both-sides evaluations, operator inequalities."""

import math

import numpy as np
import pytest

from qre import bounds
from qre.bounds import (
    alpha1,
    alpha2,
    alpha_exponent,
    envelope_constants,
    explicit_N,
    golden_section_min,
    monotonicity_gap,
    operator_ssa_sides,
    optimize_T_scalar,
    pinsker_check,
    psd_power,
    ssa_gap,
    thm42_terms,
    verify_cauchy_schwarz,
    verify_classical_reduction,
    verify_joint_convexity,
    verify_monotonicity,
    verify_monotonicity_bound,
    verify_operator_ssa,
    verify_ssa,
    verify_thm42_grid,
    verify_wyd_joint_concavity,
    verify_wyd_operator,
    lieb_ruskai_check,
    equality_suite,
)
from qre.entropy import von_neumann_entropy
from qre.errors import DivergentEntropy, IrregularFunction
from qre.functions import make_f_p, make_neg_log
from qre.linalg import (
    FactorizedSpace,
    PsdOperator,
    hermitize,
    matrix_function,
    partial_trace,
    random_contraction,
    random_density,
    random_unitary,
    tensor,
)

NEG_LOG = make_neg_log()
SPACE = FactorizedSpace((2, 2))
SPACE3 = FactorizedSpace((2, 2, 2))


class TestExponents:
    def test_log_alpha_at_half(self):
        assert alpha_exponent(0.5, 0.0) == pytest.approx(0.25, abs=1e-15)

    def test_power_alpha_at_half(self):
        # f_{1/2} at beta = 1/2: c = 1/4, alpha = 0.25/1.25 = 0.2
        c = make_f_p(0.5).power_law_c(0.5)
        assert alpha_exponent(0.5, c) == pytest.approx(0.2, abs=1e-15)

    @pytest.mark.parametrize("c", [0.0, 0.25, 0.15, 0.375])
    def test_branches_agree_at_half(self, c):
        lo = 0.5 * 0.5 / (1.0 + 2.0 * c * 0.5)
        hi = 0.5 * 0.5 / (1.0 + c)
        assert abs(lo - hi) <= 1e-12 * max(lo, hi)

    def test_two_branch_window_exponents(self):
        assert alpha1(0.25) == 0.25 and alpha1(0.75) == 0.25
        assert alpha2(0.75) == 0.75
        assert alpha2(0.25) == pytest.approx(0.375 + 0.0625 / 1.5)


class TestExplicitN:
    @pytest.mark.parametrize("beta", [0.2, 0.35, 0.5, 0.65, 0.8])
    @pytest.mark.parametrize("k_norm,d_norm", [(1.0, 1.0), (0.7, 12.0), (1.0, 150.0)])
    def test_log_matches_envelope(self, beta, k_norm, d_norm):
        printed = explicit_N("log", beta, None, k_norm, d_norm)
        _, derived, _ = envelope_constants(1.0, 0.0, beta, k_norm, d_norm)
        assert printed == pytest.approx(derived, rel=1e-10)

    @pytest.mark.parametrize("beta", [0.25, 0.5, 0.75])
    @pytest.mark.parametrize("p", [0.3, 0.5, 0.7])
    def test_power_matches_envelope(self, beta, p):
        # the printed power constant carries the raw power's measure pi/sin(p pi)
        printed = explicit_N("power", beta, p, 1.0, 5.0)
        c = p / 2.0 if beta <= 0.5 else p * (1.0 - beta) / (2.0 * beta)
        _, derived, _ = envelope_constants(math.pi / math.sin(p * math.pi), c,
                                           beta, 1.0, 5.0)
        assert printed == pytest.approx(derived, rel=1e-10)

    def test_power_vs_normalized_family(self):
        # the folded 1/(p(1-p)) measure rescales N by exactly p(1-p)
        p, beta = 0.3, 0.4
        c = p / 2.0
        f = make_f_p(p)
        _, derived, _ = envelope_constants(f.power_law_C(), c, beta, 1.0, 3.0)
        printed = explicit_N("power", beta, p, 1.0, 3.0)
        assert printed == pytest.approx(derived * p * (1.0 - p), rel=1e-10)

    def test_branch_consistency_at_half(self):
        for kind, p in (("log", None), ("power", 0.5), ("power", 0.3)):
            n = explicit_N(kind, 0.5, p, 1.0, 4.0)
            assert n > 0.0

    def test_positive_and_decreasing_in_d(self):
        for beta in (0.3, 0.6):
            values = [explicit_N("log", beta, None, 1.0, d) for d in (1.0, 5.0, 50.0)]
            assert all(v > 0 for v in values)
            assert values[0] > values[1] > values[2]


class TestThm42Terms:
    def test_log_half_closed_form(self):
        k_norm, d_norm, gap = 0.8, 3.0, 0.04
        for T in (2.0, 50.0, 1e4):
            rhs = thm42_terms(NEG_LOG, 0.5, T, k_norm, d_norm, gap)
            expected = (4 * k_norm + 4 * d_norm) / math.sqrt(T) \
                + math.sqrt(T) * math.sqrt(gap)
            assert rhs == pytest.approx(expected, rel=1e-12)

    def test_positive_at_zero_gap(self):
        assert thm42_terms(NEG_LOG, 0.5, 10.0, 1.0, 1.0, 0.0) > 0.0

    def test_optimizer_matches_calculus(self):
        # a T^{-1/2} + b T^{1/2} is minimized at T = a/b with value 2 sqrt(ab)
        k_norm, d_norm, gap = 1.0, 2.0, 0.09
        a = 4 * k_norm + 4 * d_norm
        b = math.sqrt(gap)
        consts = optimize_T_scalar(NEG_LOG, 0.5, k_norm, d_norm, gap)
        assert consts.T_star == pytest.approx(a / b, rel=1e-4)
        reached = thm42_terms(NEG_LOG, 0.5, consts.T_star, k_norm, d_norm, gap)
        assert reached == pytest.approx(2 * math.sqrt(a * b), rel=1e-8)

    def test_zero_gap_hits_boundary(self):
        consts = optimize_T_scalar(NEG_LOG, 0.5, 1.0, 1.0, 0.0)
        assert consts.boundary

    def test_irregular_function_refused(self):
        with pytest.raises(IrregularFunction):
            optimize_T_scalar(make_f_p(1.5), 0.5, 1.0, 1.0, 0.1)

    def test_golden_section(self):
        x, fx = golden_section_min(lambda u: (u - 1.3) ** 2 + 2.0, -4.0, 6.0)
        assert x == pytest.approx(1.3, abs=1e-5)
        assert fx == pytest.approx(2.0, abs=1e-9)


class TestMonotonicity:
    def test_equal_states(self):
        rho = random_density(4, seed=1)
        rep = verify_monotonicity(NEG_LOG, np.eye(2), np.eye(2), rho, rho, SPACE)
        assert rep.passed and abs(rep.rhs) < 1e-12

    def test_product_equality(self):
        r1, s1 = random_density(2, seed=2), random_density(2, seed=3)
        tau = random_density(2, seed=4)
        rho, sig = tensor(r1.mat, tau.mat), tensor(s1.mat, tau.mat)
        gap = monotonicity_gap(NEG_LOG, np.eye(2), np.eye(2), rho, sig, SPACE)
        assert abs(gap) < 1e-10

    @pytest.mark.parametrize("fid_p", [None, 0.5])
    def test_random_instances(self, fid_p):
        f = NEG_LOG if fid_p is None else make_f_p(fid_p)
        for seed in range(40):
            rng = np.random.default_rng(seed)
            rho = random_density(4, seed=rng)
            sig = random_density(4, seed=rng)
            k1 = random_contraction(2, seed=rng)
            v = random_unitary(2, seed=rng)
            rep = verify_monotonicity(f, k1, v, rho, sig, SPACE)
            assert rep.passed, f"seed {seed}: gap {rep.rhs}"


class TestThm42AndPowerLaw:
    @pytest.mark.parametrize("beta", [0.25, 0.5, 0.75])
    @pytest.mark.parametrize("p", [None, 0.5])
    def test_grid_and_star(self, beta, p):
        f = NEG_LOG if p is None else make_f_p(p)
        for seed in range(10):
            rng = np.random.default_rng(1000 + seed)
            rho = random_density(4, seed=rng)
            sig = random_density(4, seed=rng)
            k1 = random_contraction(2, seed=rng)
            v = random_unitary(2, seed=rng)
            rep = verify_thm42_grid(f, k1, v, rho, sig, beta, SPACE)
            assert rep.passed

    def test_bound_report_fields(self):
        rng = np.random.default_rng(5)
        rho = random_density(4, seed=rng)
        sig = random_density(4, seed=rng)
        rep = verify_monotonicity_bound(NEG_LOG, random_contraction(2, seed=rng),
                                        random_unitary(2, seed=rng), rho, sig,
                                        0.5, SPACE)
        assert rep.passed
        assert rep.constants.alpha == pytest.approx(0.25)
        assert rep.constants.T_star > 1.0
        assert "petz_diff_trace" in rep.details

    def test_quartic_special_case(self):
        for seed in range(20):
            rng = np.random.default_rng(2000 + seed)
            rho = random_density(4, seed=rng)
            sig = random_density(4, seed=rng)
            rep = verify_monotonicity_bound(NEG_LOG, np.eye(2), np.eye(2),
                                            rho, sig, 0.5, SPACE)
            assert rep.passed
            assert "quartic_lower" in rep.details
            assert rep.details["quartic_lower"] <= rep.details["gap"] + 1e-12

    def test_equality_instance(self):
        r1, s1 = random_density(2, seed=6), random_density(2, seed=7)
        tau = random_density(2, seed=8)
        rho, sig = tensor(r1.mat, tau.mat), tensor(s1.mat, tau.mat)
        rep = verify_monotonicity_bound(NEG_LOG, np.eye(2), np.eye(2),
                                        rho, sig, 0.5, SPACE)
        assert rep.passed
        assert rep.lhs < 1e-10

    def test_interchange_diagnostic_for_invertible_k(self):
        for seed in range(25):
            rng = np.random.default_rng(2500 + seed)
            rho = random_density(4, seed=rng)
            sig = random_density(4, seed=rng)
            k1 = random_contraction(2, seed=rng)
            v = random_unitary(2, seed=rng)
            rep = verify_monotonicity_bound(NEG_LOG, k1, v, rho, sig, 0.5, SPACE)
            assert rep.passed
            if "interchange_diff_trace" in rep.details:
                assert rep.details["interchange_diff_trace"] <= \
                    rep.details["interchange_rhs"] * (1 + 1e-8) + 1e-12


class TestJointConvexity:
    def test_identical_components(self):
        rho, sig = random_density(2, seed=9), random_density(2, seed=10)
        comps = [(0.25, rho, sig), (0.5, rho, sig), (0.25, rho, sig)]
        rep = verify_joint_convexity(NEG_LOG, np.eye(2), comps, 0.5)
        assert rep.passed
        assert abs(rep.details["gap"]) < 1e-12
        assert rep.lhs < 1e-10
        assert rep.details["equality_residual"] < 1e-10

    @pytest.mark.parametrize("p", [None, 0.5])
    @pytest.mark.parametrize("beta", [0.25, 0.5, 0.75])
    def test_random_qubit_ensembles(self, p, beta):
        f = NEG_LOG if p is None else make_f_p(p)
        for seed in range(15):
            rng = np.random.default_rng(3000 + seed)
            probs = rng.dirichlet(np.ones(3))
            comps = [(float(w), random_density(2, seed=rng),
                      random_density(2, seed=rng)) for w in probs]
            k = random_contraction(2, seed=rng)
            rep = verify_joint_convexity(f, k, comps, beta)
            assert rep.passed, f"seed {seed}"

    def test_weighted_sum_dominates_block_norm(self):
        rng = np.random.default_rng(11)
        probs = rng.dirichlet(np.ones(3))
        comps = [(float(w), random_density(2, seed=rng), random_density(2, seed=rng))
                 for w in probs]
        rep = verify_joint_convexity(NEG_LOG, np.eye(2), comps, 0.5)
        assert rep.lhs >= rep.details["residual_block_l2"] - 1e-12


class TestOperatorSSA:
    def test_kim_operator_identity(self):
        # log variant with sigma_AB = rho_AB reduces to the traced log combination
        rho = random_density(8, seed=12)
        rho_ab = partial_trace(rho.mat, SPACE3, (0, 1))
        _, rhs, _, _, _ = operator_ssa_sides(NEG_LOG, rho, rho_ab, 0.5, "thm62", SPACE3)
        logs = (matrix_function(rho, np.log)
                - SPACE3.embed(matrix_function(rho_ab, np.log), (0, 1))
                - SPACE3.embed(matrix_function(
                    partial_trace(rho.mat, SPACE3, (1, 2)), np.log), (1, 2))
                + SPACE3.embed(matrix_function(
                    partial_trace(rho.mat, SPACE3, (1,)), np.log), (1,)))
        kim = hermitize(SPACE3.partial_trace(logs @ rho.mat, (2,)))
        np.testing.assert_allclose(rhs, kim, atol=1e-9)

    def test_kim_trace_is_ssa_gap(self):
        rho = random_density(8, seed=13)
        rho_ab = partial_trace(rho.mat, SPACE3, (0, 1))
        _, rhs, _, _, _ = operator_ssa_sides(NEG_LOG, rho, rho_ab, 0.5, "thm62", SPACE3)
        assert abs(np.trace(rhs).real - ssa_gap(rho, SPACE3)) < 1e-8

    @pytest.mark.parametrize("variant", ["thm62", "thm63", "cor64", "cor65"])
    @pytest.mark.parametrize("p", [None, 0.5])
    def test_random_instances(self, variant, p):
        f = NEG_LOG if p is None else make_f_p(p)
        for seed in range(10):
            rng = np.random.default_rng(4000 + seed)
            rho = random_density(8, seed=rng)
            sab = random_density(4, seed=rng)
            rep = verify_operator_ssa(f, rho, sab, 0.5, variant, SPACE3)
            assert rep.passed, f"{variant} seed {seed}: {rep.details}"
            assert rep.details["min_eig_rhs"] >= -1e-9 * max(1.0, rep.details["rhs_scale"])

    def test_equality_case_product(self):
        rho_ab = random_density(4, seed=14)
        rho_c = random_density(2, seed=15)
        rho = tensor(rho_ab.mat, rho_c.mat)
        gram, rhs, _, _, _ = operator_ssa_sides(NEG_LOG, rho, rho_ab.mat, 0.5,
                                             "thm62", SPACE3)
        assert np.abs(gram).max() < 1e-12
        assert np.abs(rhs).max() < 1e-9

    def test_trivial_middle_factor_max_mixed(self):
        # one-dimensional B with a maximally mixed A operator: the traced
        # difference is Tr_A[(ln rho_AC) rho_AC] - (ln rho_C) rho_C + ln(d_A) rho_C
        space = FactorizedSpace((2, 1, 2))
        rho_ac = random_density(4, seed=16)
        sigma_a = np.eye(2, dtype=complex) / 2.0
        _, rhs, _, _, _ = operator_ssa_sides(NEG_LOG, rho_ac, sigma_a, 0.5,
                                          "thm62", space)
        rho_c = PsdOperator(space.partial_trace(rho_ac.mat, (2,)))
        expected = (space.partial_trace(
            matrix_function(rho_ac, np.log) @ rho_ac.mat, (2,))
            - matrix_function(rho_c, np.log) @ rho_c.mat
            + math.log(2.0) * rho_c.mat)
        np.testing.assert_allclose(rhs, hermitize(expected), atol=1e-9)
        assert np.linalg.eigvalsh(rhs).min() > -1e-9


class TestSSA:
    def test_triple_product_equality(self):
        rho = tensor(tensor(random_density(2, seed=17).mat,
                            random_density(2, seed=18).mat),
                     random_density(2, seed=19).mat)
        rep = verify_ssa(rho, 0.5, SPACE3)
        assert rep.passed
        assert abs(rep.rhs) < 1e-10          # gap
        assert rep.details["residual_hs"] < 1e-10

    def test_markov_product_equality(self):
        rho = tensor(random_density(4, seed=20).mat, random_density(2, seed=21).mat)
        rep = verify_ssa(rho, 0.5, SPACE3)
        assert rep.passed
        assert abs(rep.rhs) < 1e-10
        assert rep.details["petz_diff_trace"] < 1e-8

    @pytest.mark.parametrize("beta", [0.25, 0.5, 0.75])
    def test_random_states(self, beta):
        for seed in range(20):
            rng = np.random.default_rng(5000 + seed)
            rho = random_density(8, seed=rng)
            rep = verify_ssa(rho, beta, SPACE3)
            assert rep.passed, f"seed {seed}"
            assert rep.details["ssa_gap"] >= -1e-9


class TestWyd:
    def test_joint_concavity_commuting_family_matches_scalar(self):
        # diagonal states reduce to the classical power-mean concavity gap
        rng = np.random.default_rng(22)
        p = 0.5
        lams, mus, ws = [], [], (0.3, 0.7)
        comps = []
        for w in ws:
            lam = rng.dirichlet(np.ones(2))
            mu = rng.dirichlet(np.ones(2))
            lams.append(lam)
            mus.append(mu)
            comps.append((w, PsdOperator(np.diag(lam).astype(complex)),
                          PsdOperator(np.diag(mu).astype(complex))))
        lam_mix = sum(w * lam for w, lam in zip(ws, lams))
        mu_mix = sum(w * mu for w, mu in zip(ws, mus))
        scalar = ((mu_mix ** p * lam_mix ** (1 - p)).sum()
                  - sum(w * (mu ** p * lam ** (1 - p)).sum()
                        for w, lam, mu in zip(ws, lams, mus))) / (p * (1 - p))
        rep = verify_wyd_joint_concavity(p, np.eye(2), comps, 0.5)
        assert rep.details["gap"] == pytest.approx(scalar, abs=1e-12)
        assert rep.passed

    @pytest.mark.parametrize("p", [0.25, 0.5, 0.75, 1.5, -0.5])
    def test_sign_carried_through(self, p):
        for seed in range(10):
            rng = np.random.default_rng(6000 + seed)
            probs = rng.dirichlet(np.ones(3))
            comps = [(float(w), random_density(2, seed=rng),
                      random_density(2, seed=rng)) for w in probs]
            k = random_contraction(2, seed=rng)
            rep = verify_wyd_joint_concavity(p, k, comps, 0.5)
            assert rep.passed, f"p={p} seed={seed}"

    def test_operator_variant(self):
        for seed in range(8):
            rng = np.random.default_rng(7000 + seed)
            rho = random_density(8, seed=rng)
            sab = random_density(4, seed=rng)
            rep = verify_wyd_operator(0.5, rho, sab, 0.5, SPACE3)
            assert rep.passed, f"seed {seed}"

    def test_operator_rhs_closed_form(self):
        # traced action difference equals the power trace difference operator
        p = 0.4
        rho = random_density(8, seed=23)
        sab = random_density(4, seed=24)
        _, rhs, _, _, _ = operator_ssa_sides(make_f_p(p), rho, sab, 0.5, "cor65", SPACE3)
        sub_ab = SPACE3.subspace((0, 1))
        sb = PsdOperator(sub_ab.partial_trace(sab.mat, (1,)))
        rho_bc = PsdOperator(SPACE3.partial_trace(rho.mat, (1, 2)))
        sub_bc = SPACE3.subspace((1, 2))
        t1 = SPACE3.partial_trace(
            PsdOperator(rho.mat).power(1 - p) @ SPACE3.embed(sab.power(p), (0, 1)),
            (2,))
        t2 = sub_bc.partial_trace(
            rho_bc.power(1 - p) @ sub_bc.embed(sb.power(p), (0,)), (1,))
        expected = hermitize(t2 - t1) / (p * (1 - p))
        np.testing.assert_allclose(rhs, expected, atol=1e-9)


class TestCauchySchwarz:
    def test_random_full_rank(self):
        for seed in range(10):
            rng = np.random.default_rng(8000 + seed)
            rho = random_density(8, seed=rng)
            sab = random_density(4, seed=rng)
            rep = verify_cauchy_schwarz(rho, sab, 0.5, SPACE3)
            assert rep.passed, f"seed {seed}"

    def test_equality_instance_triggers_recovery(self):
        sab = random_density(4, seed=25)
        tau = random_density(2, seed=26)
        rho = tensor(sab.mat, tau.mat)
        rep = verify_cauchy_schwarz(rho, sab, 0.5, SPACE3)
        assert rep.passed
        assert abs(rep.details["min_eig_diff"]) < 1e-10
        assert rep.details["petz_recovery_residual"] < 1e-8

    def test_rank_deficient_refused(self):
        rho = random_density(8, rank=4, seed=27)
        sab = random_density(4, seed=28)
        with pytest.raises(DivergentEntropy):
            verify_cauchy_schwarz(rho, sab, 0.5, SPACE3)

    def test_lieb_ruskai(self):
        for seed in range(10):
            rng = np.random.default_rng(9000 + seed)
            x = (rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)))
            q = random_density(6, seed=rng).mat * 6.0
            rep = lieb_ruskai_check(x, q, FactorizedSpace((2, 3)))
            assert rep.passed, f"seed {seed}"


class TestPinskerAndClassical:
    def test_pinsker_report(self):
        rho = random_density(3, seed=29)
        sig = random_density(3, seed=30)
        u = random_unitary(3, seed=31)
        for f in (NEG_LOG, make_f_p(0.5), make_f_p(1.5)):
            rep = pinsker_check(f, u, rho, sig)
            assert rep.passed

    def test_divergent_vacuous(self):
        rho = random_density(2, seed=32)
        sig = random_density(2, rank=1, seed=33)
        rep = pinsker_check(NEG_LOG, np.eye(2), rho, sig)
        assert rep.passed and "divergent" in rep.notes

    def test_classical_reduction_report(self):
        rho = random_density(3, seed=34)
        sig = random_density(3, seed=35)
        rep = verify_classical_reduction(NEG_LOG, rho, sig)
        assert rep.passed
        assert rep.details["l1_mismatch"] < 1e-10


class TestEqualitySuite:
    def test_all_three_families(self):
        rng = np.random.default_rng(36)
        reports = equality_suite(NEG_LOG, rng)
        assert len(reports) == 12  # 3 families x (exact + 3 eps rows)
        assert all(r.passed for r in reports)
        by_family = {}
        for r in reports:
            by_family.setdefault(r.inequality_id, []).append(r)
        assert set(by_family) == {"equality_monotonicity",
                                  "equality_joint_convexity",
                                  "equality_operator_ssa"}
        for fam, reps in by_family.items():
            eps0 = reps[0]
            assert eps0.details["gap"] < 1e-10, fam
            assert eps0.details["equality_residual"] < 1e-8, fam
            gaps = [r.details["gap"] for r in reps]
            resids = [r.details["equality_residual"] for r in reps]
            assert gaps == sorted(gaps), fam
            assert resids == sorted(resids), fam

    def test_operator_ssa_forward_implication(self):
        # vanishing traced difference forces the recovery-grid residual small
        from qre.bounds import operator_ssa_equality_residual
        sab = random_density(4, seed=40)
        tau = random_density(2, seed=41)
        rho = tensor(sab.mat, tau.mat)
        _, rhs, _, _, _ = operator_ssa_sides(NEG_LOG, rho, sab.mat, 0.5,
                                             "thm62", SPACE3)
        assert abs(np.trace(rhs).real) < 1e-10
        resid = operator_ssa_equality_residual(rho, sab.mat, SPACE3,
                                               (0.1, 0.25, 0.5, 0.75, 0.9))
        assert resid < 1e-8


def test_psd_power_zeroes_below_cutoff():
    m = np.diag([1e-30, 4.0]).astype(complex)
    out = psd_power(m, 4.0)
    np.testing.assert_allclose(out, np.diag([0.0, 256.0]), atol=1e-12)


def test_ssa_gap_matches_entropy_combination():
    rho = random_density(8, seed=37)
    s_ab = von_neumann_entropy(partial_trace(rho.mat, SPACE3, (0, 1)))
    s_bc = von_neumann_entropy(partial_trace(rho.mat, SPACE3, (1, 2)))
    s_b = von_neumann_entropy(partial_trace(rho.mat, SPACE3, (1,)))
    s_abc = von_neumann_entropy(rho)
    assert ssa_gap(rho, SPACE3) == pytest.approx(s_ab + s_bc - s_abc - s_b, abs=1e-12)
