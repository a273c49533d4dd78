"""The full verification registry must pass with its default seed."""

from ptdyn.verify import available_checks, run_suite


def test_registry_names_are_stable():
    names = available_checks()
    assert len(names) == len(set(names))
    for expected in ("expm_inverse", "spin_spectrum_match", "scale_identity",
                     "truncation_convergence", "lattice_oracle"):
        assert expected in names


def test_full_suite_passes():
    results = run_suite(seed=0)
    failed = [r for r in results if not r.passed]
    assert not failed, "\n".join(
        f"{r.name}: err={r.max_err:.3e} thr={r.threshold:.1e} {r.params}"
        for r in failed)


def test_threaded_suite_matches_sequential():
    seq = run_suite(names=["wick_consistency", "nu_consistency",
                           "spin_commutators", "fock_algebra"], seed=3)
    par = run_suite(names=["wick_consistency", "nu_consistency",
                           "spin_commutators", "fock_algebra"], seed=3,
                    threads=4)
    assert [(r.name, r.max_err) for r in seq] == [(r.name, r.max_err)
                                                  for r in par]
