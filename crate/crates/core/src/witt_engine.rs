//! Deciding Witt classes from invariants.
//!
//! A form is Witt-trivial iff it has even rank, trivial signed discriminant and
//! trivial Witt invariant: `I^3` vanishes for these curves, so nothing deeper
//! is needed. Equality is triviality of the difference `E ⊥ -F`.
//!
//! Canonical representatives come from the group-ring model, which yields
//! exactly the eight templates of the classification (plus the empty form).

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::base_groups::{BrauerClass, CurveConfig, GlobalSquareClass, PicTorsionClass, UnitSquareClass};
use crate::brauer_symbols::{hasse_invariant, in_i_squared};
use crate::error::{Result, WittError};
use crate::group_ring_model::{GroupRing, ResidueWittClass};
use crate::quadratic_forms::{quaternion_norm_form, DiagonalForm, Generator};

pub fn is_trivial(form: &DiagonalForm) -> bool {
    in_i_squared(form) && hasse_invariant(form).is_trivial()
}

pub fn equals(e: &DiagonalForm, f: &DiagonalForm) -> Result<bool> {
    Ok(is_trivial(&e.orthogonal_sum(&f.negate())?))
}

/// Rank parity, signed discriminant and, on `I^2`, the Witt invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InvariantProfile {
    pub rank_parity: bool,
    pub signed_disc: GlobalSquareClass,
    pub witt_inv: Option<BrauerClass>,
}

impl fmt::Display for InvariantProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank parity {}, signed discriminant {}",
            u8::from(self.rank_parity),
            self.signed_disc
        )?;
        match self.witt_inv {
            Some(w) => write!(f, ", witt invariant {w}"),
            None => f.write_str(", not in I^2"),
        }
    }
}

pub fn invariant_profile(form: &DiagonalForm) -> InvariantProfile {
    let rank_parity = form.rank() % 2 == 1;
    let signed_disc = form.signed_discriminant();
    let witt_inv = (!rank_parity && signed_disc.is_trivial()).then(|| hasse_invariant(form));
    InvariantProfile {
        rank_parity,
        signed_disc,
        witt_inv,
    }
}

/// The representative templates, in the order the classification lists them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeTag {
    /// `<sL>`
    SL,
    /// `<t pi M>`
    TPiM,
    /// `<1, sL>`
    OneSL,
    /// `<sL, t pi M>`
    SLTPiM,
    /// `<pi, t pi M>`
    PiTPiM,
    /// `<1, sL, t pi M>`
    OneSLTPiM,
    /// `<sL, pi, t pi M>`
    SLPiTPiM,
    /// `<1, sL, pi, t pi M>`
    OneSLPiTPiM,
    /// The zero class, empty payload.
    Zero,
}

/// How a `W(C_k)` component is represented: nothing, one entry, or `<1, x>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Zero,
    Odd,
    Even,
}

impl Part {
    fn of(x: ResidueWittClass) -> Part {
        if x.is_zero() {
            Part::Zero
        } else if x.parity {
            Part::Odd
        } else {
            Part::Even
        }
    }
}

impl ShapeTag {
    pub const LISTED: [ShapeTag; 8] = [
        ShapeTag::SL,
        ShapeTag::TPiM,
        ShapeTag::OneSL,
        ShapeTag::SLTPiM,
        ShapeTag::PiTPiM,
        ShapeTag::OneSLTPiM,
        ShapeTag::SLPiTPiM,
        ShapeTag::OneSLPiTPiM,
    ];

    pub fn template(self) -> &'static str {
        match self {
            ShapeTag::SL => "<sL>",
            ShapeTag::TPiM => "<t*pi*M>",
            ShapeTag::OneSL => "<1,sL>",
            ShapeTag::SLTPiM => "<sL,t*pi*M>",
            ShapeTag::PiTPiM => "<pi,t*pi*M>",
            ShapeTag::OneSLTPiM => "<1,sL,t*pi*M>",
            ShapeTag::SLPiTPiM => "<sL,pi,t*pi*M>",
            ShapeTag::OneSLPiTPiM => "<1,sL,pi,t*pi*M>",
            ShapeTag::Zero => "ZERO",
        }
    }

    fn from_parts(a: Part, b: Part) -> ShapeTag {
        match (a, b) {
            (Part::Zero, Part::Zero) => ShapeTag::Zero,
            (Part::Odd, Part::Zero) => ShapeTag::SL,
            (Part::Zero, Part::Odd) => ShapeTag::TPiM,
            (Part::Even, Part::Zero) => ShapeTag::OneSL,
            (Part::Odd, Part::Odd) => ShapeTag::SLTPiM,
            (Part::Zero, Part::Even) => ShapeTag::PiTPiM,
            (Part::Even, Part::Odd) => ShapeTag::OneSLTPiM,
            (Part::Odd, Part::Even) => ShapeTag::SLPiTPiM,
            (Part::Even, Part::Even) => ShapeTag::OneSLPiTPiM,
        }
    }

    /// Instantiates the template with `sL = x` and `tM = y` (both without `pi`).
    pub fn instantiate(self, x: Generator, y: Generator) -> Vec<Generator> {
        let one = Generator::ONE;
        let pi = Generator::PI;
        let ty = y * pi;
        match self {
            ShapeTag::SL => vec![x],
            ShapeTag::TPiM => vec![ty],
            ShapeTag::OneSL => vec![one, x],
            ShapeTag::SLTPiM => vec![x, ty],
            ShapeTag::PiTPiM => vec![pi, ty],
            ShapeTag::OneSLTPiM => vec![one, x, ty],
            ShapeTag::SLPiTPiM => vec![x, pi, ty],
            ShapeTag::OneSLPiTPiM => vec![one, x, pi, ty],
            ShapeTag::Zero => Vec::new(),
        }
    }

    fn uses_x(self) -> bool {
        !matches!(self, ShapeTag::TPiM | ShapeTag::PiTPiM | ShapeTag::Zero)
    }

    fn uses_y(self) -> bool {
        !matches!(self, ShapeTag::SL | ShapeTag::OneSL | ShapeTag::Zero)
    }
}

impl Serialize for ShapeTag {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        serializer.serialize_str(self.template())
    }
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.template())
    }
}

/// A canonical representative: its template and the concrete form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalShape {
    pub tag: ShapeTag,
    pub payload: DiagonalForm,
}

/// Canonical representative of the Witt class of `form`.
///
/// Each class has exactly one instance among the templates whose fixed entries
/// (`1`, `pi`) are literal, so no tie-breaking is required.
pub fn canonical_form(form: &DiagonalForm) -> CanonicalShape {
    let ring = GroupRing::new(*form.config());
    let x = ring
        .to_group_ring(form)
        .expect("config taken from the form itself");
    CanonicalShape {
        tag: ShapeTag::from_parts(Part::of(x.a), Part::of(x.b)),
        payload: ring.from_group_ring(x),
    }
}

/// Default picard rank bound for the census.
pub const DEFAULT_ENUMERATION_BOUND: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeCount {
    pub shape: ShapeTag,
    pub count: usize,
}

/// Per-shape counts of nontrivial classes and the number of distinct classes reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub q_mod_4: u8,
    pub picard_rank: u32,
    pub n: u64,
    pub shapes: Vec<ShapeCount>,
    pub nontrivial: usize,
    pub total: usize,
}

impl Census {
    pub fn counts(&self) -> Vec<usize> {
        self.shapes.iter().map(|s| s.count).collect()
    }

    /// Expected nontrivial counts per listed shape, as functions of `n`.
    pub fn expected_counts(n: u64) -> [u64; 8] {
        let m = 2 * n;
        [m, m, m - 1, m * m, m - 1, m * (m - 1), m * (m - 1), (m - 1) * (m - 1)]
    }

    pub fn matches_formulas(&self) -> bool {
        let expected = Self::expected_counts(self.n);
        self.counts().iter().zip(expected).all(|(&c, e)| c as u64 == e)
            && self.total as u64 == 16 * self.n * self.n
            && self.nontrivial + 1 == self.total
    }
}

pub fn enumerate_classes(cfg: &CurveConfig) -> Result<Census> {
    enumerate_classes_with_bound(cfg, DEFAULT_ENUMERATION_BOUND)
}

/// Runs through every instance of every template. An instance counts toward its
/// shape when it is its own canonical representative, i.e. it is nontrivial and
/// cannot be written with fewer entries.
pub fn enumerate_classes_with_bound(cfg: &CurveConfig, bound: u32) -> Result<Census> {
    if cfg.picard_rank() > bound {
        return Err(WittError::BoundExceeded {
            rank: cfg.picard_rank(),
            bound,
        });
    }
    let residue: Vec<Generator> = UnitSquareClass::ALL
        .into_iter()
        .flat_map(|u| cfg.lines().map(move |l| Generator::residue(u, l)))
        .collect();
    let none = [Generator::ONE];

    let mut reached: HashSet<DiagonalForm> = HashSet::new();
    reached.insert(DiagonalForm::empty(*cfg));
    let mut shapes = Vec::with_capacity(8);
    for tag in ShapeTag::LISTED {
        let xs: &[Generator] = if tag.uses_x() { &residue } else { &none };
        let ys: &[Generator] = if tag.uses_y() { &residue } else { &none };
        let mut count = 0;
        for &x in xs {
            for &y in ys {
                let instance = DiagonalForm::from_entries_unchecked(*cfg, tag.instantiate(x, y));
                let canon = canonical_form(&instance);
                if canon.tag == tag {
                    debug_assert_eq!(canon.payload, instance);
                    count += 1;
                }
                reached.insert(canon.payload);
            }
        }
        shapes.push(ShapeCount { shape: tag, count });
    }
    let nontrivial = shapes.iter().map(|s| s.count).sum();
    Ok(Census {
        q_mod_4: cfg.q_mod_4(),
        picard_rank: cfg.picard_rank(),
        n: cfg.n(),
        shapes,
        nontrivial,
        total: reached.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinctnessReport {
    pub norm_forms: usize,
    pub trivial: usize,
    pub pairwise_distinct: bool,
    pub only_split_symbol_trivial: bool,
    pub passed: bool,
}

/// The `2n` norm forms `<1, -uL, -pi, u pi L>` are pairwise inequivalent and only
/// the split one, `u = 1, L = O`, is Witt-trivial.
pub fn verify_quaternion_distinctness(cfg: &CurveConfig) -> Result<DistinctnessReport> {
    let params: Vec<BrauerClass> = cfg.brauer_classes().collect();
    let forms = params
        .iter()
        .map(|b| quaternion_norm_form(cfg, b.unit, b.line))
        .collect::<Result<Vec<_>>>()?;
    let mut pairwise_distinct = true;
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            if equals(&forms[i], &forms[j])? {
                pairwise_distinct = false;
            }
        }
    }
    let trivial: Vec<&BrauerClass> = params
        .iter()
        .zip(&forms)
        .filter(|(_, f)| is_trivial(f))
        .map(|(b, _)| b)
        .collect();
    let only_split_symbol_trivial = trivial.len() == 1 && trivial[0].is_trivial();
    Ok(DistinctnessReport {
        norm_forms: forms.len(),
        trivial: trivial.len(),
        pairwise_distinct,
        only_split_symbol_trivial,
        passed: pairwise_distinct && only_split_symbol_trivial,
    })
}

/// Image of a rank-1 class in `Q(K) x 2Pic(C)`, `Q(K) = {1, s, pi, s*pi}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankOneWitness {
    pub generator: String,
    pub base_class: String,
    pub line: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankOneReport {
    pub order: usize,
    pub exponent: usize,
    pub distinct: bool,
    pub closed: bool,
    pub homomorphism: bool,
    pub witness: Vec<RankOneWitness>,
    pub passed: bool,
}

/// The `4n` rank-1 classes under tensor product, checked against `Q(K) x 2Pic(C)`
/// through the map `<u pi^e L> -> ((u, e), L)`.
pub fn rank_one_group_structure(cfg: &CurveConfig) -> Result<RankOneReport> {
    let gens: Vec<Generator> = Generator::all(cfg).collect();
    let forms = gens
        .iter()
        .map(|&g| DiagonalForm::single(*cfg, g))
        .collect::<Result<Vec<_>>>()?;
    let one = DiagonalForm::single(*cfg, Generator::ONE)?;

    let mut distinct = true;
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            if equals(&forms[i], &forms[j])? {
                distinct = false;
            }
        }
    }

    let image = |g: Generator| (g.unit, g.pi, g.line);
    let preimage = |u: UnitSquareClass, e: bool, l: PicTorsionClass| Generator::new(u, e, l);
    let mut closed = true;
    let mut homomorphism = true;
    for (&g, fg) in gens.iter().zip(&forms) {
        for (&h, fh) in gens.iter().zip(&forms) {
            let product = fg.tensor(fh)?;
            if product.rank() != 1 {
                closed = false;
            }
            let (u1, e1, l1) = image(g);
            let (u2, e2, l2) = image(h);
            let target = DiagonalForm::single(*cfg, preimage(u1 + u2, e1 ^ e2, l1 + l2))?;
            if !equals(&product, &target)? {
                homomorphism = false;
            }
        }
    }

    let mut exponent = 1;
    for f in &forms {
        let order = if equals(f, &one)? {
            1
        } else if equals(&f.tensor(f)?, &one)? {
            2
        } else {
            0
        };
        if order == 0 {
            exponent = 0;
            break;
        }
        exponent = exponent.max(order);
    }

    let witness = gens
        .iter()
        .map(|&g| {
            let base = GlobalSquareClass::new(g.unit, g.pi, PicTorsionClass::O);
            RankOneWitness {
                generator: format!("<{g}>"),
                base_class: base.to_string(),
                line: g.line.to_string(),
            }
        })
        .collect();

    let order = gens.len();
    let passed = distinct
        && closed
        && homomorphism
        && exponent == 2
        && order as u64 == 4 * cfg.n();
    Ok(RankOneReport {
        order,
        exponent,
        distinct,
        closed,
        homomorphism,
        witness,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

impl RelationReport {
    fn from_failures(checked: usize, failures: Vec<String>) -> Self {
        RelationReport {
            checked,
            passed: failures.is_empty(),
            failures,
        }
    }
}

fn residue_generators(cfg: &CurveConfig) -> Vec<Generator> {
    UnitSquareClass::ALL
        .into_iter()
        .flat_map(|u| cfg.lines().map(move |l| Generator::residue(u, l)))
        .collect()
}

/// `<uL, vM> ~ <1, uvLM>` and `<pi uL, pi vM> ~ <pi, pi uvLM>` for all `u, v, L, M`.
pub fn verify_relations(cfg: &CurveConfig) -> Result<RelationReport> {
    let gens = residue_generators(cfg);
    let pi = Generator::PI;
    let mut checked = 0;
    let mut failures = Vec::new();
    for &x in &gens {
        for &y in &gens {
            let cases = [
                (vec![x, y], vec![Generator::ONE, x * y]),
                (vec![pi * x, pi * y], vec![pi, pi * x * y]),
            ];
            for (lhs, rhs) in cases {
                let lhs = DiagonalForm::new(*cfg, lhs)?;
                let rhs = DiagonalForm::new(*cfg, rhs)?;
                if !equals(&lhs, &rhs)? {
                    failures.push(format!("{lhs} != {rhs}"));
                }
                checked += 1;
            }
        }
    }
    Ok(RelationReport::from_failures(checked, failures))
}

/// Two rewriting identities that reduce a sum of filtration representatives to a template, for all `s, L, t, M`:
/// with `E = <1> ⊥ <-1, d> ⊥ <1, -sL, -pi sL, pi>`,
/// `d = tM` gives `E ~ <stLM, pi, -s pi L>` and `d = t pi M` gives `E ~ <1, -sL, st pi LM>`.
pub fn verify_rewriting_identities(cfg: &CurveConfig) -> Result<RelationReport> {
    let gens = residue_generators(cfg);
    let pi = Generator::PI;
    let minus = |g: Generator| g.negated(cfg);
    let mut checked = 0;
    let mut failures = Vec::new();
    for &sl in &gens {
        for &tm in &gens {
            for ramified in [false, true] {
                let delta = if ramified { tm * pi } else { tm };
                let expanded = DiagonalForm::new(
                    *cfg,
                    vec![Generator::ONE, Generator::minus_one(cfg), delta, Generator::ONE, minus(sl), minus(pi * sl), pi],
                )?;
                let collapsed =
                    DiagonalForm::new(*cfg, vec![Generator::ONE, minus(sl), delta, pi, minus(pi * sl)])?;
                let target = if ramified {
                    vec![Generator::ONE, minus(sl), sl * tm * pi]
                } else {
                    vec![sl * tm, pi, minus(pi * sl)]
                };
                let target = DiagonalForm::new(*cfg, target)?;
                for (a, b) in [(&expanded, &collapsed), (&collapsed, &target)] {
                    if !equals(a, b)? {
                        failures.push(format!("{a} != {b}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(RelationReport::from_failures(checked, failures))
}
