"""Error-free discrimination: reciprocal states, optima, interferometer."""

import numpy as np
import pytest

from qsd import (
    ImpossibleOutcomeError,
    InfeasibleSuccessError,
    LinearDependenceError,
    TwoStateFamily,
    build_interferometer,
    failure_posterior,
    idp_bound,
    interferometer_sim,
    ket_fidelity,
    ket_to_density,
    make_symmetric,
    outcome_probs,
    random_ket,
    reciprocal_states,
    symmetric_unambiguous_optimum,
    trine_states,
    unambiguous_povm,
)


def random_independent_states(n, d, rng):
    """Random linearly independent kets (resampled if nearly dependent)."""
    while True:
        states = [random_ket(d, rng) for _ in range(n)]
        gram = np.array([[np.vdot(u, v) for v in states] for u in states])
        if np.linalg.eigvalsh(gram).min() > 1e-3:
            return states


def max_uniform_success(states, iters=60):
    """Bisect for the largest uniform success level keeping the remainder PSD."""
    recs = reciprocal_states(states)
    d = states[0].shape[0]

    def min_eig(p):
        total = sum(p / abs(np.vdot(r, s)) ** 2 * ket_to_density(r)
                    for r, s in zip(recs, states))
        return np.linalg.eigvalsh(np.eye(d) - total).min()

    lo, hi = 0.0, 1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if min_eig(mid) >= -1e-13:
            lo = mid
        else:
            hi = mid
    return lo


class TestIdpBound:
    def test_orthogonal(self):
        assert idp_bound(0.0) == 0.0

    def test_half_overlap(self):
        fam = TwoStateFamily(np.pi / 6)
        assert idp_bound(fam.overlap) == pytest.approx(0.5, abs=1e-12)

    def test_indistinguishable(self):
        assert idp_bound(1.0) == 1.0

    def test_range_checked(self):
        with pytest.raises(ValueError):
            idp_bound(1.5)


class TestReciprocalStates:
    def test_orthonormal_inputs_unchanged(self):
        states = [np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), np.array([0, 0, 1.0])]
        for rec, s in zip(reciprocal_states(states), states):
            assert ket_fidelity(rec, s) == pytest.approx(1.0, abs=1e-12)

    def test_two_state_closed_form(self):
        theta = 0.4
        fam = TwoStateFamily(theta)
        rec_plus, rec_minus = reciprocal_states(fam.states)
        np.testing.assert_allclose(rec_plus, [np.sin(theta), np.cos(theta)],
                                   atol=1e-12)
        np.testing.assert_allclose(rec_minus, [np.sin(theta), -np.cos(theta)],
                                   atol=1e-12)

    def test_orthogonality_pattern(self):
        rng = np.random.default_rng(7)
        states = random_independent_states(4, 5, rng)
        recs = reciprocal_states(states)
        for j, rec in enumerate(recs):
            for k, s in enumerate(states):
                inner = abs(np.vdot(rec, s))
                if j != k:
                    assert inner < 1e-10
                else:
                    assert inner > 1e-3

    def test_trine_is_linearly_dependent(self):
        with pytest.raises(LinearDependenceError):
            reciprocal_states(trine_states())

    def test_duality_round_trip(self):
        # the reciprocal set of the reciprocal set is the original set
        rng = np.random.default_rng(11)
        for n, d in [(2, 2), (3, 3), (3, 5), (4, 4)]:
            states = random_independent_states(n, d, rng)
            back = reciprocal_states(reciprocal_states(states))
            for orig, rec in zip(states, back):
                assert ket_fidelity(orig, rec) == pytest.approx(1.0, abs=1e-9)


class TestUnambiguousPovm:
    def test_optimal_two_state_saturates_positivity(self):
        fam = TwoStateFamily(0.3)
        upovm = unambiguous_povm(fam.states, 1.0 - fam.overlap)
        eigs = np.linalg.eigvalsh(upovm.inconclusive)
        assert abs(eigs.min()) <= 1e-9

    def test_zero_success_gives_identity_remainder(self):
        fam = TwoStateFamily(0.3)
        upovm = unambiguous_povm(fam.states, 0.0)
        np.testing.assert_allclose(upovm.inconclusive, np.eye(2), atol=1e-12)

    def test_overreaching_success_infeasible(self):
        fam = TwoStateFamily(0.3)
        with pytest.raises(InfeasibleSuccessError) as err:
            unambiguous_povm(fam.states, 1.0 - fam.overlap + 0.05)
        assert err.value.min_eigenvalue < -1e-6

    def test_conclusive_elements_never_lie(self):
        # 100 seeded random linearly independent sets, N <= 4, d <= 6
        rng = np.random.default_rng(13)
        for n, d in [(2, 2), (3, 4), (4, 6), (3, 3)]:
            for _ in range(25):
                states = random_independent_states(n, d, rng)
                level = 0.9 * max_uniform_success(states)
                upovm = unambiguous_povm(states, level)
                for j, elem in enumerate(upovm.conclusive):
                    for jp, s in enumerate(states):
                        val = (s.conj() @ elem @ s).real
                        target = level if j == jp else 0.0
                        assert val == pytest.approx(target, abs=1e-9)
                assert np.linalg.eigvalsh(upovm.inconclusive).min() >= -1e-9
                upovm.as_povm().validate()


class TestSymmetricOptimum:
    def test_orthonormal_family_never_fails(self):
        fam = make_symmetric(np.full(3, 1 / np.sqrt(3)))
        p_success, p_fail = symmetric_unambiguous_optimum(fam)
        assert p_success == pytest.approx(1.0, abs=1e-12)
        assert p_fail == pytest.approx(0.0, abs=1e-12)

    def test_two_state_reduction_matches_idp(self):
        for theta in np.linspace(0.01, np.pi / 4, 100):
            fam = make_symmetric([np.sin(theta), np.cos(theta)])
            _, p_fail = symmetric_unambiguous_optimum(fam)
            overlap = abs(np.vdot(fam.states[0], fam.states[1]))
            assert abs(p_fail - idp_bound(overlap)) <= 1e-9

    def test_three_state_reference_point(self):
        fam = make_symmetric(np.sqrt([0.5, 0.25, 0.25]))
        p_success, p_fail = symmetric_unambiguous_optimum(fam)
        assert p_success == pytest.approx(0.75, abs=1e-12)
        assert p_fail == pytest.approx(0.25, abs=1e-12)

    def test_optimum_sits_on_feasibility_boundary(self):
        rng = np.random.default_rng(17)
        for n in (3, 4):
            c = rng.normal(size=n) + 1j * rng.normal(size=n)
            c /= np.linalg.norm(c)
            fam = make_symmetric(c)
            p_success, _ = symmetric_unambiguous_optimum(fam)
            unambiguous_povm(fam.states, p_success)  # feasible
            with pytest.raises(InfeasibleSuccessError):
                unambiguous_povm(fam.states, p_success + 1e-6)
            # independent bisection oracle over the remainder's spectrum
            assert max_uniform_success(fam.states) == pytest.approx(p_success,
                                                                    abs=1e-6)

    def test_vanishing_coefficient_rejected(self):
        fam = make_symmetric([0.0, 1.0])
        with pytest.raises(LinearDependenceError):
            symmetric_unambiguous_optimum(fam)


class TestFailurePosterior:
    def test_two_state_posteriors_coincide(self):
        fam = TwoStateFamily(np.pi / 8)
        upovm = unambiguous_povm(fam.states, 1.0 - fam.overlap)
        post_plus, post_minus = failure_posterior(fam.states, upovm)
        assert ket_fidelity(post_plus, post_minus) >= 1 - 1e-9

    def test_orthogonal_states_never_fail(self):
        states = [np.array([1.0, 0]), np.array([0, 1.0])]
        upovm = unambiguous_povm(states, 1.0)
        with pytest.raises(ImpossibleOutcomeError):
            failure_posterior(states, upovm)

    def test_symmetric_optimum_posterior_rank_drops(self):
        # unique minimal coefficient: failure wipes out exactly one direction
        fam = make_symmetric(np.sqrt([0.5, 0.3, 0.2]))
        p_success, _ = symmetric_unambiguous_optimum(fam)
        upovm = unambiguous_povm(fam.states, p_success)
        posts = failure_posterior(fam.states, upovm)
        gram = np.array([[np.vdot(u, v) for v in posts] for u in posts])
        rank = np.sum(np.linalg.eigvalsh(gram) > 1e-9)
        assert rank == 2

    def test_posteriors_linearly_dependent_even_with_ties(self):
        fam = make_symmetric(np.sqrt([0.5, 0.25, 0.25]))
        p_success, _ = symmetric_unambiguous_optimum(fam)
        upovm = unambiguous_povm(fam.states, p_success)
        posts = failure_posterior(fam.states, upovm)
        gram = np.array([[np.vdot(u, v) for v in posts] for u in posts])
        rank = np.sum(np.linalg.eigvalsh(gram) > 1e-9)
        assert rank < 3


class TestInterferometer:
    def test_reference_angle_statistics(self):
        stats = interferometer_sim(np.pi / 6)
        for which, correct in (("+", "D+"), ("-", "D-")):
            wrong = "D-" if which == "+" else "D+"
            assert stats[which]["D?"] == pytest.approx(0.5, abs=1e-12)
            assert stats[which][correct] == pytest.approx(0.5, abs=1e-12)
            assert stats[which][wrong] == pytest.approx(0.0, abs=1e-12)

    def test_orthogonal_inputs_always_conclusive(self):
        stats = interferometer_sim(np.pi / 4)
        assert stats["+"]["D?"] == pytest.approx(0.0, abs=1e-12)
        assert stats["+"]["D+"] == pytest.approx(1.0, abs=1e-12)

    def test_transmission_coefficient(self):
        model = build_interferometer(np.pi / 6)
        assert model.transmission == pytest.approx(np.sqrt(2 / 3), abs=1e-12)
        assert model.reflection == pytest.approx(
            np.sqrt(1 - model.transmission ** 2), abs=1e-12)

    def test_network_is_unitary(self):
        u = build_interferometer(0.37).unitary
        np.testing.assert_allclose(u.conj().T @ u, np.eye(4), atol=1e-12)

    def test_conclusive_branch_states(self):
        model = build_interferometer(0.29)
        sq2 = 1 / np.sqrt(2)
        np.testing.assert_allclose(model.conclusive_branch("+"), [sq2, sq2],
                                   atol=1e-12)
        np.testing.assert_allclose(model.conclusive_branch("-"), [sq2, -sq2],
                                   atol=1e-12)

    def test_matches_povm_statistics_on_grid(self):
        for theta in np.linspace(0.05, np.pi / 4, 30):
            fam = TwoStateFamily(theta)
            upovm = unambiguous_povm(fam.states, 1.0 - fam.overlap)
            povm = upovm.as_povm()
            stats = interferometer_sim(theta)
            for which, ket in zip(("+", "-"), fam.states):
                probs = outcome_probs(povm, ket_to_density(ket))
                detector = {"+": "D+", "-": "D-"}[which]
                other = {"+": "D-", "-": "D+"}[which]
                own = 0 if which == "+" else 1
                assert abs(stats[which][detector] - probs[own]) <= 1e-9
                assert abs(stats[which][other] - probs[1 - own]) <= 1e-9
                assert abs(stats[which]["D?"] - probs[2]) <= 1e-9

    def test_angle_range_checked(self):
        with pytest.raises(ValueError):
            build_interferometer(0.0)
        with pytest.raises(ValueError):
            build_interferometer(1.0)
