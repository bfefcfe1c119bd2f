#![allow(dead_code)]

use curve_witt::{make_config, CurveConfig, DiagonalForm, Generator, PicTorsionClass, UnitSquareClass};
use proptest::prelude::*;
use rand::Rng;

pub fn all_configs(max_rank: i64) -> Vec<CurveConfig> {
    let mut out = Vec::new();
    for q in [1, 3] {
        for r in 0..=max_rank {
            out.push(make_config(q, r).unwrap());
        }
    }
    out
}

pub fn random_generator<R: Rng>(rng: &mut R, cfg: &CurveConfig) -> Generator {
    Generator::new(
        UnitSquareClass::from_bit(rng.random()),
        rng.random(),
        PicTorsionClass::from_bits(rng.random_range(0..cfg.n())),
    )
}

/// Uniform length in `0..=max_len`, uniform entries.
pub fn random_form<R: Rng>(rng: &mut R, cfg: &CurveConfig, max_len: usize) -> DiagonalForm {
    let len = rng.random_range(0..=max_len);
    let entries = (0..len).map(|_| random_generator(rng, cfg)).collect();
    DiagonalForm::new(*cfg, entries).unwrap()
}

pub fn arb_config() -> impl Strategy<Value = CurveConfig> {
    (prop_oneof![Just(1i64), Just(3i64)], 0i64..=2).prop_map(|(q, r)| make_config(q, r).unwrap())
}

pub fn arb_generator(cfg: CurveConfig) -> impl Strategy<Value = Generator> {
    (any::<bool>(), any::<bool>(), 0..cfg.n()).prop_map(|(u, e, l)| {
        Generator::new(UnitSquareClass::from_bit(u), e, PicTorsionClass::from_bits(l))
    })
}

pub fn arb_form(cfg: CurveConfig, max_len: usize) -> impl Strategy<Value = DiagonalForm> {
    prop::collection::vec(arb_generator(cfg), 0..=max_len)
        .prop_map(move |entries| DiagonalForm::new(cfg, entries).unwrap())
}

/// A configuration with `k` forms over it.
pub fn arb_forms(k: usize, max_len: usize) -> impl Strategy<Value = (CurveConfig, Vec<DiagonalForm>)> {
    arb_config().prop_flat_map(move |cfg| {
        (Just(cfg), prop::collection::vec(arb_form(cfg, max_len), k))
    })
}

/// All multisets of size `len` drawn from `alphabet`, as sorted vectors.
pub fn multisets(alphabet: &[Generator], len: usize) -> Vec<Vec<Generator>> {
    fn go(alphabet: &[Generator], start: usize, len: usize, cur: &mut Vec<Generator>, out: &mut Vec<Vec<Generator>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..alphabet.len() {
            cur.push(alphabet[i]);
            go(alphabet, i, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(alphabet, 0, len, &mut Vec::new(), &mut out);
    out
}
