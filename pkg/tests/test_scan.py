import numpy as np
import pytest

from chshpair.families import FamilySpec
from chshpair.pairs import Bipartition
from chshpair.scan import PUBLISHED, ScanError, ThresholdScan, bisect_threshold, criterion_value, reproduce_table


def closed_form_isotropic_chsh(d):
    # matching pair: y = 2x/d + 4(1-x)/d^2, correlation 2x/(d y); violation iff correlation > 1/sqrt 2
    c = 1 / np.sqrt(2)
    return 4 * c / (2 * d - (2 * d - 4) * c)


def test_ghz_noise_gte_sum():
    x = bisect_threshold(ThresholdScan(FamilySpec("ghz_noise", 2, 3), "gte_sum"))
    assert abs(x - 0.839708) < 5e-4
    # X = 8 t^2 - 4 with t = 2x/(1+x); 3X = 8 gives t = sqrt(5/6)
    t = np.sqrt(5 / 6)
    assert abs(x - t / (2 - t)) < 1e-6


def test_isotropic_overlap():
    x = bisect_threshold(ThresholdScan(FamilySpec("isotropic", 5), "overlap_pos"))
    assert abs(x - 0.491272) < 5e-4
    for d in range(2, 8):
        x = bisect_threshold(ThresholdScan(FamilySpec("isotropic", d), "overlap_pos"))
        assert abs(x - closed_form_isotropic_chsh(d)) < 1e-6


@pytest.mark.parametrize("d", range(2, 8))
def test_isotropic_rc(d):
    x = bisect_threshold(ThresholdScan(FamilySpec("isotropic", d), "rc"))
    assert abs(x - 1 / (d + 1)) < 1e-6


def test_threshold_ordering():
    for d in range(2, 8):
        fam = FamilySpec("isotropic", d)
        chsh = bisect_threshold(ThresholdScan(fam, "overlap_pos"))
        rc = bisect_threshold(ThresholdScan(fam, "rc"))
        assert chsh > rc


def test_tolerance_stability():
    fam = FamilySpec("ghz_noise", 3, 3)
    a = bisect_threshold(ThresholdScan(fam, "gte_bound", tol=1e-6))
    b = bisect_threshold(ThresholdScan(fam, "gte_bound", tol=1e-8))
    assert abs(a - b) <= 1e-6


def test_table_cells():
    (i3,) = [c for c in reproduce_table("I", dims=[3]) if c.range == "Range 2"]
    assert abs(i3.value - 0.731621) < 5e-4
    ii7 = [c for c in reproduce_table("II", dims=[7]) if c.range == "Range 1"][0]
    assert abs(ii7.value - 0.408205) < 5e-4
    (iii5,) = reproduce_table("iii", dims=[5])
    assert abs(iii5.value - 0.16188) < 5e-4


def test_table_shapes():
    assert len(PUBLISHED["II"]["Range 1"]) == 6
    assert [c.d for c in reproduce_table("III")] == [2, 3, 4, 5]
    with pytest.raises(ValueError):
        reproduce_table("IV")


def test_prescan_monotone_on_families():
    for fam, crit in [
        (FamilySpec("isotropic", 3), "overlap_pos"),
        (FamilySpec("isotropic", 3), "rc"),
        (FamilySpec("ghz_noise", 2, 3), "gte_sum"),
        (FamilySpec("ghz_noise", 2, 3), "gte_bound"),
    ]:
        signs = [criterion_value(crit, fam, x) > 0 for x in np.linspace(0, 1, 101)]
        assert sum(a != b for a, b in zip(signs, signs[1:])) == 1


def test_no_sign_change():
    with pytest.raises(ScanError):
        bisect_threshold(ThresholdScan(FamilySpec("isotropic", 2), "overlap_pos", bracket=(0.0, 0.5)))


class Wiggly(ThresholdScan):
    def __call__(self, x):
        return np.sin(20 * x)


def test_non_monotone_aborts():
    with pytest.raises(ScanError):
        bisect_threshold(Wiggly(FamilySpec("isotropic", 2), "overlap_pos"))


def test_bad_scan_arguments():
    with pytest.raises(ValueError):
        ThresholdScan(FamilySpec("isotropic", 2), "ppt")
    with pytest.raises(ValueError):
        ThresholdScan(FamilySpec("isotropic", 2), "rc", bracket=(1.0, 0.0))


def test_partition_specific_overlap():
    fam = FamilySpec("ghz_noise", 2, 3)
    xs = [bisect_threshold(ThresholdScan(fam, "overlap_pos", partition=Bipartition.parse(p))) for p in ("1|23", "2|13", "3|12")]
    assert max(xs) - min(xs) < 1e-6
    assert abs(xs[0] - 0.54692) < 5e-4
