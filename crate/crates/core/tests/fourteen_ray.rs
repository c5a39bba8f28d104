mod common;

use ehrfan::ehrhart::{chi_closed_form_dim2, dim2_is_ehrhart, ClosedFormFailure, EhrhartEngine, EhrhartError, FailureReason};
use ehrfan::lattice::{Int, LatticeVector};
use ehrfan::plfun::PLFunction;

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

#[test]
fn balanced_but_not_ehrhart() {
    let fan = common::fourteen_ray_fan();
    assert_eq!(fan.dim(), 2);
    assert!(fan.is_balanced().unwrap());

    match dim2_is_ehrhart(&fan) {
        Err(EhrhartError::ClosedForm(ClosedFormFailure::LinearCondition { a, residual })) => {
            assert_eq!(a, ints(&[3, 3, 3, 3, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0]));
            assert_eq!(residual, LatticeVector::from_i64s(&[-4, -2, -2, -2]));
        }
        other => panic!("unexpected {other:?}"),
    }

    let mut engine = EhrhartEngine::new();
    let verdict = engine.is_ehrhart(&fan);
    let failure = verdict.failure().expect("not Ehrhart").root_cause().clone();
    match failure.reason {
        FailureReason::LinearInvariance { residual, .. } => assert_eq!(residual, ints(&[-4, -2, -2, -2])),
        other => panic!("unexpected {other:?}"),
    }

    let zero = PLFunction::zero(fan.clone());
    assert!(engine.eval_chi(&zero).is_err());
    assert!(chi_closed_form_dim2(&zero).is_err());
}
