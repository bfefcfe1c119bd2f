//! Quaternion symbols with values in `2Br(C)`, the Hasse invariant of a
//! diagonalization and the Witt invariant on `I^2`.

use crate::base_groups::{BrauerClass, CurveConfig};
use crate::error::{Result, WittError};
use crate::quadratic_forms::{DiagonalForm, Generator};

/// The quaternion symbol `(a, b)` of two generators.
///
/// For `a = u pi^e L` and `b = v pi^f M` this is
/// `(f u + e v + e f [-1], f L + e M)`: unit-unit symbols vanish, `(x, pi)` is the
/// quaternion of `x`, and `(pi, pi) = (-1, pi)`.
pub fn symbol(cfg: &CurveConfig, a: Generator, b: Generator) -> BrauerClass {
    BrauerClass {
        unit: a.unit.scaled(b.pi) + b.unit.scaled(a.pi) + cfg.minus_one().scaled(a.pi & b.pi),
        line: a.line.scaled(b.pi) + b.line.scaled(a.pi),
    }
}

/// `sum_{i<j} (a_i, a_j)` over the entries of `E`.
///
/// The symbol is additive in each argument, so the pair sum is accumulated as
/// `sum_j (a_1 ... a_{j-1}, a_j)` in one pass.
pub fn hasse_invariant(form: &DiagonalForm) -> BrauerClass {
    let cfg = form.config();
    let mut prefix = Generator::ONE;
    let mut acc = BrauerClass::TRIVIAL;
    for &g in form.entries() {
        acc = acc + symbol(cfg, prefix, g);
        prefix = prefix * g;
    }
    acc
}

/// Whether `E` has even rank and trivial signed discriminant.
pub fn in_i_squared(form: &DiagonalForm) -> bool {
    form.rank().is_multiple_of(2) && form.signed_discriminant().is_trivial()
}

/// Clifford invariant of a form in `I^2`. The rank-mod-8 corrections relating it
/// to the Hasse invariant are unit-unit symbols, all trivial here.
pub fn witt_invariant(form: &DiagonalForm) -> Result<BrauerClass> {
    if !in_i_squared(form) {
        return Err(WittError::NotInISquared);
    }
    Ok(hasse_invariant(form))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_groups::{make_config, PicTorsionClass, UnitSquareClass};
    use crate::quadratic_forms::quaternion_norm_form;

    const S: UnitSquareClass = UnitSquareClass::S;

    fn pairwise_hasse(form: &DiagonalForm) -> BrauerClass {
        let e = form.entries();
        let mut acc = BrauerClass::TRIVIAL;
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                acc = acc + symbol(form.config(), e[i], e[j]);
            }
        }
        acc
    }

    #[test]
    fn symbol_examples() {
        for q in [1, 3] {
            let cfg = make_config(q, 1).unwrap();
            let s = Generator::residue(S, PicTorsionClass::O);
            assert!(symbol(&cfg, s, s).is_trivial());
            assert_eq!(
                symbol(&cfg, Generator::PI, Generator::PI),
                BrauerClass::new(cfg.minus_one(), PicTorsionClass::O)
            );
            let l1 = PicTorsionClass::basis(1);
            assert_eq!(
                symbol(&cfg, Generator::residue(S, l1), Generator::PI),
                BrauerClass::new(S, l1)
            );
        }
    }

    #[test]
    fn symbol_symmetric_and_biadditive_exhaustive() {
        for q in [1, 3] {
            let cfg = make_config(q, 2).unwrap();
            let gens: Vec<_> = Generator::all(&cfg).collect();
            for &a in &gens {
                assert!(symbol(&cfg, a, a.negated(&cfg)).is_trivial(), "(a,-a) for {a}");
                for &b in &gens {
                    assert_eq!(symbol(&cfg, a, b), symbol(&cfg, b, a));
                    for &c in &gens {
                        assert_eq!(
                            symbol(&cfg, a * c, b),
                            symbol(&cfg, a, b) + symbol(&cfg, c, b)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hasse_examples() {
        for q in [1, 3] {
            let cfg = make_config(q, 1).unwrap();
            let l1 = PicTorsionClass::basis(1);
            let norm = quaternion_norm_form(&cfg, S, l1).unwrap();
            assert_eq!(pairwise_hasse(&norm), BrauerClass::new(S, l1));
            assert_eq!(hasse_invariant(&norm), BrauerClass::new(S, l1));

            for k in 0..9 {
                let ones = DiagonalForm::new(cfg, vec![Generator::ONE; k]).unwrap();
                assert!(hasse_invariant(&ones).is_trivial());
            }
            let h = DiagonalForm::new(cfg, vec![Generator::ONE, Generator::minus_one(&cfg)]).unwrap();
            assert!(hasse_invariant(&h).is_trivial());
        }
    }

    #[test]
    fn prefix_sum_matches_pairwise_sum() {
        let cfg = make_config(3, 2).unwrap();
        let gens: Vec<_> = Generator::all(&cfg).collect();
        // deterministic walk through long mixed forms
        let mut entries = Vec::new();
        for i in 0..40usize {
            entries.push(gens[(i * 7 + i * i) % gens.len()]);
            let form = DiagonalForm::new(cfg, entries.clone()).unwrap();
            assert_eq!(hasse_invariant(&form), pairwise_hasse(&form));
        }
    }

    #[test]
    fn witt_invariant_examples() {
        let cfg = make_config(3, 1).unwrap();
        let l1 = PicTorsionClass::basis(1);
        let norm = quaternion_norm_form(&cfg, S, l1).unwrap();
        assert_eq!(witt_invariant(&norm), Ok(BrauerClass::new(S, l1)));

        let m = Generator::minus_one(&cfg);
        let hh = DiagonalForm::new(cfg, vec![Generator::ONE, m, Generator::ONE, m]).unwrap();
        assert_eq!(witt_invariant(&hh), Ok(BrauerClass::TRIVIAL));

        let odd = DiagonalForm::new(cfg, vec![Generator::residue(S, l1)]).unwrap();
        assert_eq!(witt_invariant(&odd), Err(WittError::NotInISquared));
        assert!(witt_invariant(&odd).unwrap_err().to_string().contains("not in I-squared"));
    }
}
