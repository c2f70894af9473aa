use lens_surgery::enumerate_params;
use lens_surgery::lattice::{check_regions, trace_curves, CurveDefect, Lattice};

const MAX_P: i64 = 200;

#[test]
fn nonzero_entries_stay_in_the_region() {
    for params in enumerate_params(MAX_P) {
        let lattice = Lattice::new(params).unwrap();
        if lattice.polynomial().is_trivial() {
            continue;
        }
        let check = check_regions(&lattice, lattice.fundamental_window());
        assert!(
            check.contained(),
            "{params}: {:?}",
            &check.outside[..check.outside.len().min(4)]
        );
    }
}

// Every flat alternating polynomial gives one curve per region translate.
// The others are not lens surgery polynomials; their arrows do not join up
// into embedded curves and the check names the obstruction.
#[test]
fn one_curve_per_translate() {
    let mut admissible = 0;
    let mut rejected = 0;
    for params in enumerate_params(MAX_P) {
        let lattice = Lattice::new(params).unwrap();
        let poly = lattice.polynomial();
        if poly.is_trivial() {
            continue;
        }
        let check = check_regions(&lattice, lattice.fundamental_window());
        if poly.is_flat() && poly.is_alternating() {
            admissible += 1;
            assert!(check.single_curves(), "{params}: {check:?}");
        } else {
            rejected += 1;
            assert!(
                matches!(
                    check.defect,
                    Some(
                        CurveDefect::DeadEnd(_)
                            | CurveDefect::CrossesTranslate(_)
                            | CurveDefect::LeavesRegion(_)
                    )
                ),
                "{params}: {check:?}"
            );
        }
    }
    assert!(
        admissible > 500 && rejected > 1000,
        "{admissible} {rejected}"
    );
}

#[test]
fn traced_curves_descend() {
    for params in enumerate_params(60) {
        let lattice = Lattice::new(params).unwrap();
        for curve in trace_curves(&lattice, lattice.fundamental_window()) {
            assert!(
                curve.arrows.windows(2).all(|w| w[0].j >= w[1].j),
                "{params}"
            );
        }
    }
}
