//! The group-ring realization `W(C_k)[G]`, `G = {<1>, <pi>}`.
//!
//! The residue-curve Witt ring `W(C_k)` is modeled by pairs (rank parity,
//! signed discriminant over `C_k`); its `I^2` vanishes, so this pair is a
//! complete invariant. A form `A ⊥ pi B` with `A`, `B` free of `pi` maps to
//! `class(A) + <pi> class(B)`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::base_groups::{CurveConfig, PicTorsionClass, UnitSquareClass, write_term};
use crate::error::{Result, WittError};
use crate::quadratic_forms::{sign_exponent, DiagonalForm, Generator};
use crate::witt_engine::equals;

/// A class in `W(C_k)`: rank parity and signed discriminant `u L` over the residue curve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueWittClass {
    pub parity: bool,
    pub unit: UnitSquareClass,
    pub line: PicTorsionClass,
}

impl ResidueWittClass {
    pub const ZERO: ResidueWittClass = ResidueWittClass {
        parity: false,
        unit: UnitSquareClass::ONE,
        line: PicTorsionClass::O,
    };

    pub fn new(parity: bool, unit: UnitSquareClass, line: PicTorsionClass) -> Self {
        ResidueWittClass { parity, unit, line }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl fmt::Display for ResidueWittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; ", u8::from(self.parity))?;
        write_term(f, self.unit, false, self.line)?;
        f.write_str("]")
    }
}

/// Arithmetic in `W(C_k)` for a fixed configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueWittRing {
    cfg: CurveConfig,
}

impl ResidueWittRing {
    pub fn new(cfg: CurveConfig) -> Self {
        ResidueWittRing { cfg }
    }

    pub fn config(&self) -> &CurveConfig {
        &self.cfg
    }

    pub fn zero(&self) -> ResidueWittClass {
        ResidueWittClass::ZERO
    }

    /// `class(<1>)`; its signed discriminant at rank 1 is `-1`.
    pub fn one(&self) -> ResidueWittClass {
        ResidueWittClass::new(true, self.cfg.minus_one(), PicTorsionClass::O)
    }

    /// All `4n` classes, ordered by `(parity, unit, line)`.
    pub fn elements(&self) -> Vec<ResidueWittClass> {
        let mut out = Vec::with_capacity(4 * self.cfg.n() as usize);
        for parity in [false, true] {
            for unit in UnitSquareClass::ALL {
                for line in self.cfg.lines() {
                    out.push(ResidueWittClass::new(parity, unit, line));
                }
            }
        }
        out
    }

    /// Class of the residue form `<u_1 L_1, ..., u_k L_k>`; `pi` exponents are ignored.
    pub fn class_of(&self, entries: &[Generator]) -> ResidueWittClass {
        let mut unit = self.cfg.minus_one().scaled(sign_exponent(entries.len()));
        let mut line = PicTorsionClass::O;
        for g in entries {
            unit = unit + g.unit;
            line = line + g.line;
        }
        ResidueWittClass::new(entries.len() % 2 == 1, unit, line)
    }

    /// Smallest residue representative: `<>`, `<d·(-1)>` for odd classes, `<1, -d>` for even ones.
    pub fn representative(&self, x: ResidueWittClass) -> Vec<Generator> {
        let m = self.cfg.minus_one();
        if x.is_zero() {
            Vec::new()
        } else if x.parity {
            vec![Generator::residue(x.unit + m, x.line)]
        } else {
            vec![Generator::ONE, Generator::residue(x.unit + m, x.line)]
        }
    }

    /// Addition with the cross term `parity_x · parity_y · [-1]`.
    pub fn add(&self, x: ResidueWittClass, y: ResidueWittClass) -> ResidueWittClass {
        ResidueWittClass {
            parity: x.parity ^ y.parity,
            unit: x.unit + y.unit + self.cfg.minus_one().scaled(x.parity & y.parity),
            line: x.line + y.line,
        }
    }

    pub fn neg(&self, x: ResidueWittClass) -> ResidueWittClass {
        ResidueWittClass {
            unit: x.unit + self.cfg.minus_one().scaled(x.parity),
            ..x
        }
    }

    /// Multiplication through representatives: tensor `rep(x)` and `rep(y)`, then read off the class.
    pub fn mul(&self, x: ResidueWittClass, y: ResidueWittClass) -> ResidueWittClass {
        let rx = self.representative(x);
        let ry = self.representative(y);
        let product: Vec<Generator> = rx
            .iter()
            .flat_map(|&a| ry.iter().map(move |&b| a * b))
            .collect();
        self.class_of(&product)
    }

    /// The inclusion `W(C_k) -> W(C)` on representatives.
    pub fn include(&self, x: ResidueWittClass) -> DiagonalForm {
        DiagonalForm::from_entries_unchecked(self.cfg, self.representative(x))
    }
}

pub fn residue_add(cfg: &CurveConfig, x: ResidueWittClass, y: ResidueWittClass) -> ResidueWittClass {
    ResidueWittRing::new(*cfg).add(x, y)
}

pub fn residue_mul(cfg: &CurveConfig, x: ResidueWittClass, y: ResidueWittClass) -> ResidueWittClass {
    ResidueWittRing::new(*cfg).mul(x, y)
}

/// `a + <pi> b` in `W(C_k)[G]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElement {
    pub a: ResidueWittClass,
    pub b: ResidueWittClass,
}

impl GroupRingElement {
    pub fn new(a: ResidueWittClass, b: ResidueWittClass) -> Self {
        GroupRingElement { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + <pi>{}", self.a, self.b)
    }
}

/// Ring structure on `W(C_k)[G]` with `<pi>^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupRing {
    residue: ResidueWittRing,
}

impl GroupRing {
    pub fn new(cfg: CurveConfig) -> Self {
        GroupRing {
            residue: ResidueWittRing::new(cfg),
        }
    }

    pub fn config(&self) -> &CurveConfig {
        self.residue.config()
    }

    pub fn residue(&self) -> &ResidueWittRing {
        &self.residue
    }

    pub fn zero(&self) -> GroupRingElement {
        GroupRingElement::default()
    }

    pub fn one(&self) -> GroupRingElement {
        GroupRingElement::new(self.residue.one(), self.residue.zero())
    }

    /// The group element `<pi>`.
    pub fn pi(&self) -> GroupRingElement {
        GroupRingElement::new(self.residue.zero(), self.residue.one())
    }

    /// All `16n^2` elements, ordered by `(a, b)`.
    pub fn elements(&self) -> Vec<GroupRingElement> {
        let res = self.residue.elements();
        res.iter()
            .flat_map(|&a| res.iter().map(move |&b| GroupRingElement::new(a, b)))
            .collect()
    }

    pub fn add(&self, x: GroupRingElement, y: GroupRingElement) -> GroupRingElement {
        GroupRingElement::new(self.residue.add(x.a, y.a), self.residue.add(x.b, y.b))
    }

    pub fn neg(&self, x: GroupRingElement) -> GroupRingElement {
        GroupRingElement::new(self.residue.neg(x.a), self.residue.neg(x.b))
    }

    /// `(a + g b)(c + g d) = (ac + bd) + g (ad + bc)`.
    pub fn mul(&self, x: GroupRingElement, y: GroupRingElement) -> GroupRingElement {
        let r = &self.residue;
        GroupRingElement::new(
            r.add(r.mul(x.a, y.a), r.mul(x.b, y.b)),
            r.add(r.mul(x.a, y.b), r.mul(x.b, y.a)),
        )
    }

    /// Splits entries by `pi` exponent; the `pi` entries lose their uniformizer.
    pub fn to_group_ring(&self, form: &DiagonalForm) -> Result<GroupRingElement> {
        if form.config() != self.config() {
            return Err(WittError::ConfigMismatch);
        }
        let (ramified, unramified): (Vec<Generator>, Vec<Generator>) =
            form.entries().iter().partition(|g| g.pi);
        Ok(GroupRingElement::new(
            self.residue.class_of(&unramified),
            self.residue.class_of(&ramified),
        ))
    }

    /// `rep(a) ⊥ pi rep(b)`.
    pub fn from_group_ring(&self, x: GroupRingElement) -> DiagonalForm {
        let mut entries = self.residue.representative(x.a);
        entries.extend(
            self.residue
                .representative(x.b)
                .into_iter()
                .map(|g| g * Generator::PI),
        );
        DiagonalForm::from_entries_unchecked(*self.config(), entries)
    }

    /// Augmentation `a + <pi> b -> a + b`: reduction modulo the ideal `<1,-pi> W(C_k)`.
    pub fn augment(&self, x: GroupRingElement) -> ResidueWittClass {
        self.residue.add(x.a, x.b)
    }

    pub fn splitting_map(&self, form: &DiagonalForm) -> Result<ResidueWittClass> {
        Ok(self.augment(self.to_group_ring(form)?))
    }
}

pub fn to_group_ring(form: &DiagonalForm) -> GroupRingElement {
    GroupRing::new(*form.config())
        .to_group_ring(form)
        .expect("config taken from the form itself")
}

pub fn from_group_ring(cfg: &CurveConfig, x: GroupRingElement) -> DiagonalForm {
    GroupRing::new(*cfg).from_group_ring(x)
}

pub fn splitting_map(form: &DiagonalForm) -> ResidueWittClass {
    let ring = GroupRing::new(*form.config());
    ring.augment(to_group_ring(form))
}

/// Picard rank bound for the exhaustive table checks.
pub const EXHAUSTIVE_RANK_BOUND: u32 = 2;

/// A disagreement between the form engine and the group ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub check: String,
    pub left: String,
    pub right: String,
}

const MAX_WITNESSES: usize = 16;

fn record(mismatches: &mut Vec<Mismatch>, failures: &mut usize, check: &str, left: String, right: String) {
    *failures += 1;
    if mismatches.len() < MAX_WITNESSES {
        mismatches.push(Mismatch {
            check: check.to_string(),
            left,
            right,
        });
    }
}

/// Outcome of comparing full addition and multiplication tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingIsoReport {
    pub q_mod_4: u8,
    pub picard_rank: u32,
    pub elements: usize,
    pub addition_pairs: usize,
    pub multiplication_pairs: usize,
    pub failures: usize,
    pub mismatches: Vec<Mismatch>,
    pub passed: bool,
}

/// Verifies that `to_group_ring` is a bijective ring homomorphism.
///
/// Every element `x` of `W(C_k)[G]` gets the form `P(x) = from_group_ring(x)`.
/// The form engine (invariants only) must then confirm: `P(x)` maps back to
/// `x`, distinct elements give non-equal forms, `P(x) ⊥ P(y) ~ P(x + y)`,
/// `P(x) ⊗ P(y) ~ P(xy)`, and `<1>`, `<pi>` land on `1`, `g`.
pub fn check_ring_iso(cfg: &CurveConfig) -> Result<RingIsoReport> {
    if cfg.picard_rank() > EXHAUSTIVE_RANK_BOUND {
        return Err(WittError::BoundExceeded {
            rank: cfg.picard_rank(),
            bound: EXHAUSTIVE_RANK_BOUND,
        });
    }
    let ring = GroupRing::new(*cfg);
    let elems = ring.elements();
    let index: HashMap<GroupRingElement, usize> =
        elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let forms: Vec<DiagonalForm> = elems.iter().map(|&x| ring.from_group_ring(x)).collect();

    let mut mismatches = Vec::new();
    let mut failures = 0;

    for (x, p) in elems.iter().zip(&forms) {
        let back = ring.to_group_ring(p)?;
        if back != *x {
            record(&mut mismatches, &mut failures, "round-trip", x.to_string(), back.to_string());
        }
    }
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            if equals(&forms[i], &forms[j])? {
                record(&mut mismatches, &mut failures, "injective", forms[i].to_string(), forms[j].to_string());
            }
        }
    }
    let unit_forms = [
        (DiagonalForm::single(*cfg, Generator::ONE)?, ring.one()),
        (DiagonalForm::single(*cfg, Generator::PI)?, ring.pi()),
        (DiagonalForm::empty(*cfg), ring.zero()),
    ];
    for (form, x) in &unit_forms {
        if !equals(form, &forms[index[x]])? {
            record(&mut mismatches, &mut failures, "generators", form.to_string(), x.to_string());
        }
    }

    let mut addition_pairs = 0;
    let mut multiplication_pairs = 0;
    for (i, &x) in elems.iter().enumerate() {
        for (j, &y) in elems.iter().enumerate() {
            let sum = forms[i].orthogonal_sum(&forms[j])?;
            let expected = &forms[index[&ring.add(x, y)]];
            if !equals(&sum, expected)? {
                record(&mut mismatches, &mut failures, "addition", sum.to_string(), expected.to_string());
            }
            addition_pairs += 1;

            let product = forms[i].tensor(&forms[j])?;
            let expected = &forms[index[&ring.mul(x, y)]];
            if !equals(&product, expected)? {
                record(&mut mismatches, &mut failures, "multiplication", product.to_string(), expected.to_string());
            }
            multiplication_pairs += 1;
        }
    }

    Ok(RingIsoReport {
        q_mod_4: cfg.q_mod_4(),
        picard_rank: cfg.picard_rank(),
        elements: elems.len(),
        addition_pairs,
        multiplication_pairs,
        failures,
        passed: failures == 0,
        mismatches,
    })
}

/// Outcome of the splitting-map verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub q_mod_4: u8,
    pub picard_rank: u32,
    pub additive: bool,
    pub multiplicative: bool,
    pub kills_ideal: bool,
    pub kernel_is_ideal: bool,
    pub retraction: bool,
    pub direct_sum: bool,
    pub failures: usize,
    pub mismatches: Vec<Mismatch>,
    pub passed: bool,
}

/// Checks the splitting map `W(C) -> W(C_k)` over all pairs of classes:
/// ring homomorphism, kernel equal to `<1,-pi> W(C_k)`, left inverse of the
/// inclusion, and `E -> (split(E), b(E))` an additive bijection onto `W(C_k)^2`.
pub fn check_splitting(cfg: &CurveConfig) -> Result<SplittingReport> {
    if cfg.picard_rank() > EXHAUSTIVE_RANK_BOUND {
        return Err(WittError::BoundExceeded {
            rank: cfg.picard_rank(),
            bound: EXHAUSTIVE_RANK_BOUND,
        });
    }
    let ring = GroupRing::new(*cfg);
    let res = ring.residue();
    let m = cfg.minus_one();
    let kernel_generator = DiagonalForm::new(
        *cfg,
        vec![Generator::ONE, Generator::new(m, true, PicTorsionClass::O)],
    )?;
    let forms: Vec<DiagonalForm> = ring
        .elements()
        .into_iter()
        .map(|x| ring.from_group_ring(x))
        .collect();
    let split = |f: &DiagonalForm| ring.splitting_map(f);

    let mut mismatches = Vec::new();
    let mut failures = 0;
    let (mut additive, mut multiplicative, mut kills_ideal) = (true, true, true);

    for e in &forms {
        for f in &forms {
            let lhs = split(&e.orthogonal_sum(f)?)?;
            let rhs = res.add(split(e)?, split(f)?);
            if lhs != rhs {
                additive = false;
                record(&mut mismatches, &mut failures, "additive", e.to_string(), f.to_string());
            }
            let lhs = split(&e.tensor(f)?)?;
            let rhs = res.mul(split(e)?, split(f)?);
            if lhs != rhs {
                multiplicative = false;
                record(&mut mismatches, &mut failures, "multiplicative", e.to_string(), f.to_string());
            }
        }
        let killed = split(&kernel_generator.tensor(e)?)?;
        if !killed.is_zero() {
            kills_ideal = false;
            record(&mut mismatches, &mut failures, "kills ideal", e.to_string(), killed.to_string());
        }
    }

    // kernel == { <1,-pi> ⊗ include(c) : c in W(C_k) }
    let mut ideal: Vec<GroupRingElement> = res
        .elements()
        .into_iter()
        .map(|c| kernel_generator.tensor(&res.include(c)))
        .map(|f| f.map(|f| to_group_ring(&f)))
        .collect::<Result<_>>()?;
    ideal.sort();
    ideal.dedup();
    let mut kernel: Vec<GroupRingElement> = forms
        .iter()
        .filter(|f| split(f).map(|c| c.is_zero()).unwrap_or(false))
        .map(to_group_ring)
        .collect();
    kernel.sort();
    let kernel_is_ideal = kernel == ideal;
    if !kernel_is_ideal {
        record(&mut mismatches, &mut failures, "kernel", format!("{} elements", kernel.len()), format!("{} elements", ideal.len()));
    }

    let mut retraction = true;
    for c in res.elements() {
        let back = split(&res.include(c))?;
        if back != c {
            retraction = false;
            record(&mut mismatches, &mut failures, "retraction", c.to_string(), back.to_string());
        }
    }

    let decompose = |f: &DiagonalForm| -> Result<(ResidueWittClass, ResidueWittClass)> {
        Ok((split(f)?, ring.to_group_ring(f)?.b))
    };
    let mut images: Vec<_> = forms.iter().map(decompose).collect::<Result<_>>()?;
    let mut direct_sum = true;
    for e in &forms {
        for f in &forms {
            let (s1, b1) = decompose(e)?;
            let (s2, b2) = decompose(f)?;
            if decompose(&e.orthogonal_sum(f)?)? != (res.add(s1, s2), res.add(b1, b2)) {
                direct_sum = false;
            }
        }
    }
    images.sort();
    images.dedup();
    if images.len() != forms.len() || images.len() != res.elements().len().pow(2) {
        direct_sum = false;
    }
    if !direct_sum {
        record(&mut mismatches, &mut failures, "direct sum", format!("{} images", images.len()), format!("{} classes", forms.len()));
    }

    Ok(SplittingReport {
        q_mod_4: cfg.q_mod_4(),
        picard_rank: cfg.picard_rank(),
        additive,
        multiplicative,
        kills_ideal,
        kernel_is_ideal,
        retraction,
        direct_sum,
        failures,
        passed: failures == 0,
        mismatches,
    })
}
