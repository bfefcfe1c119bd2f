//! With trivial 2-torsion Picard group the Witt ring is that of the local field
//! itself. These tests compare the engine against classical Hilbert symbols over
//! `Q_p`, computed from Legendre symbols of actual integers.

mod common;

use curve_witt::{equals, is_trivial, make_config, symbol, DiagonalForm, Generator};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Legendre symbol of a unit mod p, as +1/-1.
fn legendre(a: u64, p: u64) -> i32 {
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

struct LocalField {
    p: u64,
    nonresidue: u64,
}

impl LocalField {
    fn new(p: u64) -> Self {
        let nonresidue = (2..p).find(|&a| legendre(a, p) == -1).unwrap();
        LocalField { p, nonresidue }
    }

    /// `(valuation, unit mod p)` for the square-class representative of a generator.
    fn element(&self, g: Generator) -> (u64, u64) {
        let unit = if g.unit.bit() { self.nonresidue } else { 1 };
        (u64::from(g.pi), unit)
    }

    /// Hilbert symbol `(a, b)_p` for odd `p`.
    fn hilbert(&self, a: (u64, u64), b: (u64, u64)) -> i32 {
        let (alpha, u) = a;
        let (beta, v) = b;
        let eps = (self.p - 1) / 2;
        let mut sign = if (alpha * beta * eps) % 2 == 1 { -1 } else { 1 };
        if beta % 2 == 1 {
            sign *= legendre(u, self.p);
        }
        if alpha % 2 == 1 {
            sign *= legendre(v, self.p);
        }
        sign
    }

    /// Classical test: even dimension, `(-1)^{k(k-1)/2} det` a square, Hasse invariant 1.
    fn hyperbolic(&self, entries: &[Generator]) -> bool {
        let k = entries.len() as u64;
        if k % 2 == 1 {
            return false;
        }
        let elems: Vec<(u64, u64)> = entries.iter().map(|&g| self.element(g)).collect();
        let valuation: u64 = elems.iter().map(|e| e.0).sum();
        let mut unit = elems.iter().fold(1, |acc, e| acc * e.1 % self.p);
        if (k * k.saturating_sub(1) / 2) % 2 == 1 {
            unit = (self.p - unit) % self.p;
        }
        if valuation % 2 == 1 || legendre(unit, self.p) == -1 {
            return false;
        }
        let mut hasse = 1;
        for i in 0..elems.len() {
            for j in i + 1..elems.len() {
                hasse *= self.hilbert(elems[i], elems[j]);
            }
        }
        hasse == 1
    }
}

const PRIMES: [u64; 8] = [3, 7, 11, 19, 5, 13, 17, 29];

#[test]
fn symbol_matches_hilbert_symbol() {
    for p in PRIMES {
        let field = LocalField::new(p);
        let cfg = make_config((p % 4) as i64, 0).unwrap();
        for a in Generator::all(&cfg) {
            for b in Generator::all(&cfg) {
                let ours = symbol(&cfg, a, b);
                let classical = field.hilbert(field.element(a), field.element(b));
                assert_eq!(ours.unit.bit(), classical == -1, "p={p}, ({a}, {b})");
            }
        }
    }
}

#[test]
fn triviality_matches_classical_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for p in PRIMES {
        let field = LocalField::new(p);
        let cfg = make_config((p % 4) as i64, 0).unwrap();
        for _ in 0..4000 {
            let form = common::random_form(&mut rng, &cfg, 10);
            assert_eq!(is_trivial(&form), field.hyperbolic(form.entries()), "p={p}, {form}");
        }
    }
}

#[test]
fn equality_matches_classical_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for p in PRIMES {
        let field = LocalField::new(p);
        let cfg = make_config((p % 4) as i64, 0).unwrap();
        for _ in 0..2000 {
            let e = common::random_form(&mut rng, &cfg, 6);
            let f = common::random_form(&mut rng, &cfg, 6);
            let diff: Vec<Generator> = e
                .entries()
                .iter()
                .copied()
                .chain(f.entries().iter().map(|g| g.negated(&cfg)))
                .collect();
            assert_eq!(equals(&e, &f).unwrap(), field.hyperbolic(&diff), "p={p}: {e} vs {f}");
        }
    }
}

#[test]
fn residue_field_witt_ring_order() {
    // <1,1,1,1> is hyperbolic over Q_p for every odd p; <1,1> only when p = 1 mod 4
    for p in PRIMES {
        let field = LocalField::new(p);
        let cfg = make_config((p % 4) as i64, 0).unwrap();
        for k in [2usize, 4] {
            let ones = DiagonalForm::new(cfg, vec![Generator::ONE; k]).unwrap();
            assert_eq!(is_trivial(&ones), field.hyperbolic(ones.entries()));
        }
        assert!(field.hyperbolic(&[Generator::ONE; 4]));
        assert_eq!(field.hyperbolic(&[Generator::ONE; 2]), p % 4 == 1);
    }
}
