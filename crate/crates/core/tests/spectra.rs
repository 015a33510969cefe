//! Frozen spectra, computed by an independent symbolic evaluation of the
//! q-factorial Schur closed form.

use qcapelli::invariants::{build_y, eigenvalue};
use qcapelli::symmetric::rhs_theorem1;
use qcapelli::{Algebra, Partition};

const GOLDEN: &[(&str, &str, &str)] = &[
    ("1", "3", "1 - q^6"),
    ("2", "2", "1 - q^2 - q^4 + q^6"),
    ("3", "5", "1 - q^6 - q^8 - q^10 + q^14 + q^16 + q^18 - q^24"),
    ("1,0", "2,1", "q^-2 - q^4"),
    ("1,1", "1,1", "q^-2 - 1 - q^2 + q^4"),
    ("2,1", "3,1", "q^-2 - 1 - q^2 + q^4 - q^6 + q^8 + q^10 - q^12"),
    ("2,0", "2,2", "q^-4 - 1 - q^2 + q^6"),
    ("1,1", "2,0", "0"),
    ("1,0,0", "1,1,0", "q^-2 - q^2"),
    ("1,1,0", "2,1,0", "q^-2 - 1 - q^4 + q^6"),
    ("1,1,1", "1,1,1", "q^-6 - q^-4 - q^-2 + q^2 + q^4 - q^6"),
    ("2,0,0", "2,0,0", "1 - q^2 - q^4 + q^6"),
];

#[test]
fn closed_form_matches_frozen_values() {
    for (nu, lam, expected) in GOLDEN {
        let (nu, lam): (Partition, Partition) = (nu.parse().unwrap(), lam.parse().unwrap());
        assert_eq!(rhs_theorem1(&nu, &lam).to_string(), *expected, "ν={nu} λ={lam}");
    }
}

#[test]
fn fock_eigenvalues_match_frozen_values() {
    for (nu, lam, expected) in GOLDEN {
        let (nu, lam): (Partition, Partition) = (nu.parse().unwrap(), lam.parse().unwrap());
        let alg = Algebra::new(nu.n());
        let y = build_y(&alg, &nu).unwrap();
        assert_eq!(eigenvalue(&alg, &y, &lam).unwrap().to_string(), *expected, "ν={nu} λ={lam}");
    }
}
