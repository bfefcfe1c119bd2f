//! Diagonal forms over the curve and their arithmetic.
//!
//! A [`Generator`] is the rank-1 form `<u * pi^e * L>`; a [`DiagonalForm`] is an
//! orthogonal sum of generators tagged with its [`CurveConfig`]. Entry order
//! carries no meaning and nothing here normalizes it.

use std::fmt;
use std::ops::Mul;

use crate::base_groups::{
    write_term, CurveConfig, GlobalSquareClass, PicTorsionClass, UnitSquareClass,
};
use crate::error::{Result, WittError};

/// The rank-1 form `<u * pi^e * L>`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub unit: UnitSquareClass,
    pub pi: bool,
    pub line: PicTorsionClass,
}

impl Generator {
    pub const ONE: Generator = Generator {
        unit: UnitSquareClass::ONE,
        pi: false,
        line: PicTorsionClass::O,
    };
    pub const PI: Generator = Generator {
        unit: UnitSquareClass::ONE,
        pi: true,
        line: PicTorsionClass::O,
    };

    pub fn new(unit: UnitSquareClass, pi: bool, line: PicTorsionClass) -> Self {
        Generator { unit, pi, line }
    }

    /// `<u L>`, no uniformizer.
    pub fn residue(unit: UnitSquareClass, line: PicTorsionClass) -> Self {
        Generator::new(unit, false, line)
    }

    /// `<-1>`.
    pub fn minus_one(cfg: &CurveConfig) -> Self {
        Generator::residue(cfg.minus_one(), PicTorsionClass::O)
    }

    /// `<-a>`.
    pub fn negated(self, cfg: &CurveConfig) -> Self {
        Generator {
            unit: self.unit + cfg.minus_one(),
            ..self
        }
    }

    pub fn square_class(self) -> GlobalSquareClass {
        GlobalSquareClass::new(self.unit, self.pi, self.line)
    }

    pub fn from_square_class(class: GlobalSquareClass) -> Self {
        Generator::new(class.unit, class.pi, class.line)
    }

    /// All `4n` generators of a configuration, ordered by `(pi, unit, line)`.
    pub fn all(cfg: &CurveConfig) -> impl Iterator<Item = Generator> + Clone {
        cfg.global_classes().map(Generator::from_square_class)
    }
}

/// Tensor product of rank-1 forms; `pi^2` is a square so exponents add mod 2.
impl Mul for Generator {
    type Output = Generator;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Generator) -> Generator {
        Generator::from_square_class(self.square_class() + rhs.square_class())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self.unit, self.pi, self.line)
    }
}

/// `e(k) = k(k+1)/2 mod 2`, the sign exponent of the signed discriminant at rank `k`.
pub(crate) fn sign_exponent(rank: usize) -> bool {
    matches!(rank % 4, 1 | 2)
}

/// An orthogonal sum `<a1, ..., ak>` of rank-1 forms. The empty form is the zero class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    cfg: CurveConfig,
    entries: Vec<Generator>,
}

impl DiagonalForm {
    /// Builds a form, rejecting entries that use bundle labels beyond the Picard rank.
    pub fn new(cfg: CurveConfig, entries: Vec<Generator>) -> Result<Self> {
        for g in &entries {
            if !cfg.contains_line(g.line) {
                let label = g.line.labels().last().unwrap_or_default() as u64;
                return Err(WittError::UnknownBundleLabel {
                    label,
                    picard_rank: cfg.picard_rank(),
                });
            }
        }
        Ok(DiagonalForm { cfg, entries })
    }

    pub fn empty(cfg: CurveConfig) -> Self {
        DiagonalForm {
            cfg,
            entries: Vec::new(),
        }
    }

    pub(crate) fn from_entries_unchecked(cfg: CurveConfig, entries: Vec<Generator>) -> Self {
        debug_assert!(entries.iter().all(|g| cfg.contains_line(g.line)));
        DiagonalForm { cfg, entries }
    }

    pub fn single(cfg: CurveConfig, g: Generator) -> Result<Self> {
        Self::new(cfg, vec![g])
    }

    pub fn config(&self) -> &CurveConfig {
        &self.cfg
    }

    pub fn entries(&self) -> &[Generator] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_same(&self, other: &DiagonalForm) -> Result<()> {
        if self.cfg == other.cfg {
            Ok(())
        } else {
            Err(WittError::ConfigMismatch)
        }
    }

    /// `E ⊥ F`: concatenation of entries.
    pub fn orthogonal_sum(&self, other: &DiagonalForm) -> Result<DiagonalForm> {
        self.check_same(other)?;
        let mut entries = Vec::with_capacity(self.rank() + other.rank());
        entries.extend_from_slice(&self.entries);
        entries.extend_from_slice(&other.entries);
        Ok(DiagonalForm {
            cfg: self.cfg,
            entries,
        })
    }

    /// `E ⊗ F`: all pairwise products, row-major in `E`.
    pub fn tensor(&self, other: &DiagonalForm) -> Result<DiagonalForm> {
        self.check_same(other)?;
        let entries = self
            .entries
            .iter()
            .flat_map(|&a| other.entries.iter().map(move |&b| a * b))
            .collect();
        Ok(DiagonalForm {
            cfg: self.cfg,
            entries,
        })
    }

    /// `<-1> ⊗ E`.
    pub fn negate(&self) -> DiagonalForm {
        let cfg = self.cfg;
        DiagonalForm {
            cfg,
            entries: self.entries.iter().map(|g| g.negated(&cfg)).collect(),
        }
    }

    /// `<x> ⊗ E` for a single generator `x`.
    pub fn scale(&self, x: Generator) -> DiagonalForm {
        DiagonalForm {
            cfg: self.cfg,
            entries: self.entries.iter().map(|&g| g * x).collect(),
        }
    }

    /// Unsigned discriminant: the product of all entries.
    pub fn discriminant(&self) -> GlobalSquareClass {
        self.entries
            .iter()
            .fold(GlobalSquareClass::TRIVIAL, |acc, g| acc + g.square_class())
    }

    /// `(-1)^(k(k+1)/2)` times the discriminant, `k` the rank.
    pub fn signed_discriminant(&self) -> GlobalSquareClass {
        let mut d = self.discriminant();
        d.unit = d.unit + self.cfg.minus_one().scaled(sign_exponent(self.rank()));
        d
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

/// Norm form `<1, -uL, -pi, u pi L>` of the quaternion algebra `(uL, pi)`.
pub fn quaternion_norm_form(
    cfg: &CurveConfig,
    unit: UnitSquareClass,
    line: PicTorsionClass,
) -> Result<DiagonalForm> {
    let x = Generator::residue(unit, line);
    DiagonalForm::new(
        *cfg,
        vec![
            Generator::ONE,
            x.negated(cfg),
            Generator::PI.negated(cfg),
            x * Generator::PI,
        ],
    )
}
