//! The finite elementary abelian 2-groups underneath every invariant.
//!
//! All of them are written additively: unit square classes of the residue
//! field, the 2-torsion Picard group with a fixed basis `L1..Lr`, global square
//! classes `(unit, pi exponent, line)` and 2-torsion Brauer classes
//! `(unit, line)`, the latter standing for the quaternion `(sL, pi)`.

use std::fmt;
use std::ops::Add;

use crate::error::{Result, WittError};

/// Largest supported 2-torsion Picard rank; line classes are stored as `u64` bitmasks.
pub const MAX_PICARD_RANK: u32 = 32;

/// The two parameters that fix the Witt ring: `q mod 4` and the 2-torsion Picard rank `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveConfig {
    q_mod_4: u8,
    picard_rank: u32,
}

impl CurveConfig {
    pub fn new(q_mod_4: i64, picard_rank: i64) -> Result<Self> {
        if q_mod_4 != 1 && q_mod_4 != 3 {
            return Err(WittError::InvalidResidueClass(q_mod_4));
        }
        if picard_rank < 0 {
            return Err(WittError::NegativeRank(picard_rank));
        }
        if picard_rank > MAX_PICARD_RANK as i64 {
            return Err(WittError::RankTooLarge {
                rank: picard_rank,
                max: MAX_PICARD_RANK,
            });
        }
        Ok(CurveConfig {
            q_mod_4: q_mod_4 as u8,
            picard_rank: picard_rank as u32,
        })
    }

    pub fn q_mod_4(&self) -> u8 {
        self.q_mod_4
    }

    pub fn picard_rank(&self) -> u32 {
        self.picard_rank
    }

    /// `n = |2Pic(C)| = 2^r`.
    pub fn n(&self) -> u64 {
        1u64 << self.picard_rank
    }

    /// Square class of `-1` in the residue field: trivial iff `q = 1 mod 4`.
    pub fn minus_one(&self) -> UnitSquareClass {
        if self.q_mod_4 == 1 {
            UnitSquareClass::ONE
        } else {
            UnitSquareClass::S
        }
    }

    /// Whether `line` only uses basis labels `L1..Lr` of this configuration.
    pub fn contains_line(&self, line: PicTorsionClass) -> bool {
        line.0 >> self.picard_rank == 0
    }

    pub fn lines(&self) -> impl Iterator<Item = PicTorsionClass> + Clone {
        (0..self.n()).map(PicTorsionClass)
    }

    pub fn global_classes(&self) -> impl Iterator<Item = GlobalSquareClass> + Clone {
        let lines = self.lines();
        [false, true].into_iter().flat_map(move |pi| {
            let lines = lines.clone();
            UnitSquareClass::ALL.into_iter().flat_map(move |unit| {
                lines
                    .clone()
                    .map(move |line| GlobalSquareClass { unit, pi, line })
            })
        })
    }

    pub fn brauer_classes(&self) -> impl Iterator<Item = BrauerClass> + Clone {
        let lines = self.lines();
        UnitSquareClass::ALL
            .into_iter()
            .flat_map(move |unit| lines.clone().map(move |line| BrauerClass { unit, line }))
    }
}

impl fmt::Display for CurveConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} mod 4, r={}", self.q_mod_4, self.picard_rank)
    }
}

pub fn make_config(q_mod_4: i64, picard_rank: i64) -> Result<CurveConfig> {
    CurveConfig::new(q_mod_4, picard_rank)
}

pub fn minus_one_class(cfg: &CurveConfig) -> UnitSquareClass {
    cfg.minus_one()
}

/// Complete enumerations of `2Pic(C)`, the global square classes and `2Br(C)`,
/// of sizes `n`, `4n` and `2n`.
pub fn enumerate_groups(
    cfg: &CurveConfig,
) -> (Vec<PicTorsionClass>, Vec<GlobalSquareClass>, Vec<BrauerClass>) {
    (
        cfg.lines().collect(),
        cfg.global_classes().collect(),
        cfg.brauer_classes().collect(),
    )
}

/// Square class of a unit of the residue field: `1` or the non-square `s`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitSquareClass(bool);

impl UnitSquareClass {
    pub const ONE: UnitSquareClass = UnitSquareClass(false);
    pub const S: UnitSquareClass = UnitSquareClass(true);
    pub const ALL: [UnitSquareClass; 2] = [Self::ONE, Self::S];

    pub fn from_bit(bit: bool) -> Self {
        UnitSquareClass(bit)
    }

    pub fn bit(self) -> bool {
        self.0
    }

    pub fn is_trivial(self) -> bool {
        !self.0
    }

    /// `self` if `bit` is set, the trivial class otherwise.
    pub fn scaled(self, bit: bool) -> Self {
        UnitSquareClass(self.0 & bit)
    }
}

impl Add for UnitSquareClass {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Self {
        UnitSquareClass(self.0 ^ rhs.0)
    }
}

impl fmt::Display for UnitSquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "s" } else { "1" })
    }
}

/// A class in `2Pic(C)` as coordinates over the basis `L1..Lr` (bit `k-1` is `Lk`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PicTorsionClass(u64);

impl PicTorsionClass {
    /// The structure sheaf `O`.
    pub const O: PicTorsionClass = PicTorsionClass(0);

    pub fn from_bits(bits: u64) -> Self {
        PicTorsionClass(bits)
    }

    /// Basis element `Lk`, 1-indexed. Panics for `k = 0` or `k > 64`.
    pub fn basis(k: u32) -> Self {
        assert!((1..=64).contains(&k), "basis label L{k} out of range");
        PicTorsionClass(1u64 << (k - 1))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_trivial(self) -> bool {
        self.0 == 0
    }

    pub fn scaled(self, bit: bool) -> Self {
        if bit {
            self
        } else {
            Self::O
        }
    }

    /// 1-indexed basis labels present in this class, ascending.
    pub fn labels(self) -> impl Iterator<Item = u32> {
        (0..64u32).filter(move |i| self.0 >> i & 1 == 1).map(|i| i + 1)
    }
}

impl Add for PicTorsionClass {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Self {
        PicTorsionClass(self.0 ^ rhs.0)
    }
}

impl fmt::Display for PicTorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("O");
        }
        let labels: Vec<String> = self.labels().map(|k| format!("L{k}")).collect();
        f.write_str(&labels.join("*"))
    }
}

/// Writes `u * pi^e * L` as a `*`-separated product, `1` when everything is trivial.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    unit: UnitSquareClass,
    pi: bool,
    line: PicTorsionClass,
) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    if unit.bit() {
        parts.push("s".into());
    }
    if pi {
        parts.push("pi".into());
    }
    parts.extend(line.labels().map(|k| format!("L{k}")));
    if parts.is_empty() {
        f.write_str("1")
    } else {
        f.write_str(&parts.join("*"))
    }
}

/// A global square class `u * pi^e * L`; the values taken by (signed) discriminants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlobalSquareClass {
    pub unit: UnitSquareClass,
    pub pi: bool,
    pub line: PicTorsionClass,
}

impl GlobalSquareClass {
    pub const TRIVIAL: GlobalSquareClass = GlobalSquareClass {
        unit: UnitSquareClass::ONE,
        pi: false,
        line: PicTorsionClass::O,
    };

    pub fn new(unit: UnitSquareClass, pi: bool, line: PicTorsionClass) -> Self {
        GlobalSquareClass { unit, pi, line }
    }

    pub fn is_trivial(self) -> bool {
        self == Self::TRIVIAL
    }
}

impl Add for GlobalSquareClass {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GlobalSquareClass {
            unit: self.unit + rhs.unit,
            pi: self.pi ^ rhs.pi,
            line: self.line + rhs.line,
        }
    }
}

impl fmt::Display for GlobalSquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self.unit, self.pi, self.line)
    }
}

/// A class in `2Br(C)`: the quaternion algebra `(u L, pi)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerClass {
    pub unit: UnitSquareClass,
    pub line: PicTorsionClass,
}

impl BrauerClass {
    /// Class of the split (matrix) algebra.
    pub const TRIVIAL: BrauerClass = BrauerClass {
        unit: UnitSquareClass::ONE,
        line: PicTorsionClass::O,
    };

    pub fn new(unit: UnitSquareClass, line: PicTorsionClass) -> Self {
        BrauerClass { unit, line }
    }

    pub fn is_trivial(self) -> bool {
        self == Self::TRIVIAL
    }
}

impl Add for BrauerClass {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        BrauerClass {
            unit: self.unit + rhs.unit,
            line: self.line + rhs.line,
        }
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_term(f, self.unit, false, self.line)?;
        f.write_str(",pi)")
    }
}
