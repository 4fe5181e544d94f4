//! Indicator statistics, their orbit sums, and homomesy/orbomesy deciders.
//!
//! Statistics are exact rational linear combinations of the atoms
//! `chi[x]` (is `x` in the antichain), `chihat[x]` (is `x` in the ideal),
//! `chi` (antichain size) and `chihat` (ideal size). The text form is
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := '-'? (number '*'? atom | number | atom)
//! atom   := 'chi' ('[' index ']')? | 'chihat' ('[' index ']')?
//! number := digits ('/' digits)?
//! ```
//!
//! with 1-based element indices and whitespace ignored, e.g.
//! `2*chi[3] - chi[5] + 1/2`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{FenceError, Result};
use crate::fence::{ElementSet, Fence, SetKind};
use crate::rowmotion::{orbits, Family, Orbit};
use crate::tiling::{AlphaTiling, TileCounts};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// `χ_x`, 0-based element.
    Chi(usize),
    /// `χ̂_x`, 0-based element.
    ChiHat(usize),
    /// `χ`, antichain cardinality.
    Card,
    /// `χ̂`, ideal cardinality.
    CardHat,
}

impl Atom {
    pub fn family(self) -> Family {
        match self {
            Atom::Chi(_) | Atom::Card => Family::Antichains,
            Atom::ChiHat(_) | Atom::CardHat => Family::Ideals,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Chi(x) => write!(f, "chi[{}]", x + 1),
            Atom::ChiHat(x) => write!(f, "chihat[{}]", x + 1),
            Atom::Card => f.write_str("chi"),
            Atom::CardHat => f.write_str("chihat"),
        }
    }
}

/// `Σ c_k·atom_k + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatExpr {
    pub terms: Vec<(BigRational, Atom)>,
    pub constant: BigRational,
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `3`, `-1/2`.
pub fn format_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn serialize_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

impl StatExpr {
    pub fn zero() -> Self {
        StatExpr {
            terms: Vec::new(),
            constant: BigRational::zero(),
        }
    }

    pub fn atom(atom: Atom) -> Self {
        StatExpr::zero().plus(BigRational::one(), atom)
    }

    pub fn chi(x: usize) -> Self {
        StatExpr::atom(Atom::Chi(x))
    }

    pub fn chi_hat(x: usize) -> Self {
        StatExpr::atom(Atom::ChiHat(x))
    }

    pub fn card() -> Self {
        StatExpr::atom(Atom::Card)
    }

    pub fn card_hat() -> Self {
        StatExpr::atom(Atom::CardHat)
    }

    /// Adds `coef·atom`, merging with an existing term for the same atom.
    pub fn plus(mut self, coef: BigRational, atom: Atom) -> Self {
        if let Some(slot) = self.terms.iter_mut().find(|(_, a)| *a == atom) {
            slot.0 += coef;
        } else {
            self.terms.push((coef, atom));
        }
        self.terms.retain(|(c, _)| !c.is_zero());
        self
    }

    pub fn plus_int(self, coef: i64, atom: Atom) -> Self {
        self.plus(int(coef), atom)
    }

    pub fn with_constant(mut self, c: BigRational) -> Self {
        self.constant += c;
        self
    }

    /// The family the atoms act on; `None` for a pure constant.
    pub fn family(&self) -> Result<Option<Family>> {
        let mut fam = None;
        for (_, a) in &self.terms {
            match fam {
                None => fam = Some(a.family()),
                Some(f) if f != a.family() => return Err(FenceError::MixedStatistic),
                _ => {}
            }
        }
        Ok(fam)
    }

    fn check(&self, f: &Fence, family: Family) -> Result<()> {
        if let Some(fam) = self.family()? {
            if fam != family {
                return Err(FenceError::KindMismatch {
                    expected: fam.kind(),
                    found: family.kind(),
                });
            }
        }
        for (_, a) in &self.terms {
            if let Atom::Chi(x) | Atom::ChiHat(x) = *a {
                if x >= f.len() {
                    return Err(FenceError::ElementOutOfRange {
                        index: x + 1,
                        n: f.len(),
                    });
                }
            }
        }
        Ok(())
    }
}

impl std::ops::Add for StatExpr {
    type Output = StatExpr;

    fn add(self, rhs: StatExpr) -> StatExpr {
        let mut out = self.with_constant(rhs.constant);
        for (c, a) in rhs.terms {
            out = out.plus(c, a);
        }
        out
    }
}

impl std::ops::Sub for StatExpr {
    type Output = StatExpr;

    fn sub(self, rhs: StatExpr) -> StatExpr {
        self + rhs * -BigRational::one()
    }
}

impl std::ops::Mul<BigRational> for StatExpr {
    type Output = StatExpr;

    fn mul(mut self, k: BigRational) -> StatExpr {
        for t in &mut self.terms {
            t.0 *= &k;
        }
        self.constant *= &k;
        self.terms.retain(|(c, _)| !c.is_zero());
        self
    }
}

impl fmt::Display for StatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut emit = |f: &mut fmt::Formatter<'_>, c: &BigRational, body: Option<&Atom>| {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match body {
                Some(a) if mag.is_one() => write!(f, "{a}"),
                Some(a) => write!(f, "{}*{a}", format_ratio(&mag)),
                None => f.write_str(&format_ratio(&mag)),
            }
        };
        for (c, a) in &self.terms {
            emit(f, c, Some(a))?;
        }
        if !self.constant.is_zero() || self.terms.is_empty() {
            emit(f, &self.constant, None)?;
        }
        Ok(())
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
        }
    }

    fn word(&mut self) -> &str {
        self.skip();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn err(&self, msg: &str) -> FenceError {
        FenceError::Parse(format!("statistic: {msg} at offset {}", self.pos))
    }

    fn number(&mut self) -> Result<Option<BigRational>> {
        let Some(n) = self.digits() else {
            return Ok(None);
        };
        if self.eat(b'/') {
            let d = self.digits().ok_or_else(|| self.err("expected a denominator"))?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Some(BigRational::new(n, d)))
        } else {
            Ok(Some(BigRational::from_integer(n)))
        }
    }

    fn atom(&mut self) -> Result<Option<Atom>> {
        if !matches!(self.peek(), Some(b'a'..=b'z')) {
            return Ok(None);
        }
        let hat = match self.word() {
            "chi" => false,
            "chihat" => true,
            other => {
                let other = other.to_string();
                return Err(self.err(&format!("unknown atom '{other}'")));
            }
        };
        if !self.eat(b'[') {
            return Ok(Some(if hat { Atom::CardHat } else { Atom::Card }));
        }
        let idx = self.digits().ok_or_else(|| self.err("expected an element index"))?;
        if !self.eat(b']') {
            return Err(self.err("expected ']'"));
        }
        let idx: usize = idx
            .try_into()
            .map_err(|_| self.err("element index too large"))?;
        if idx == 0 {
            return Err(self.err("element indices start at 1"));
        }
        Ok(Some(if hat {
            Atom::ChiHat(idx - 1)
        } else {
            Atom::Chi(idx - 1)
        }))
    }
}

impl FromStr for StatExpr {
    type Err = FenceError;

    fn from_str(s: &str) -> Result<Self> {
        let mut lx = Lexer {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut expr = StatExpr::zero();
        let mut sign = if lx.eat(b'-') { -BigRational::one() } else { BigRational::one() };
        loop {
            let num = lx.number()?;
            if num.is_some() {
                lx.eat(b'*');
            }
            let atom = lx.atom()?;
            match (num, atom) {
                (None, None) => return Err(lx.err("expected a number or atom")),
                (Some(c), None) => expr.constant += sign * c,
                (c, Some(a)) => expr = expr.plus(sign * c.unwrap_or_else(BigRational::one), a),
            }
            sign = if lx.eat(b'+') {
                BigRational::one()
            } else if lx.eat(b'-') {
                -BigRational::one()
            } else if lx.peek().is_none() {
                break;
            } else {
                return Err(lx.err("expected '+' or '-'"));
            };
        }
        Ok(expr)
    }
}

/// Value of `e` on a single antichain or ideal.
pub fn eval_stat(f: &Fence, e: &StatExpr, set: &ElementSet) -> Result<BigRational> {
    let family = match set.kind() {
        SetKind::Antichain => Family::Antichains,
        SetKind::Ideal => Family::Ideals,
        found => {
            return Err(FenceError::KindMismatch {
                expected: e.family()?.unwrap_or(Family::Antichains).kind(),
                found,
            })
        }
    };
    e.check(f, family)?;
    let mut v = e.constant.clone();
    for (c, a) in &e.terms {
        let x = match *a {
            Atom::Chi(x) | Atom::ChiHat(x) => u64::from(set.contains(x)),
            Atom::Card | Atom::CardHat => set.len() as u64,
        };
        v += c * BigRational::from_integer(BigInt::from(x));
    }
    Ok(v)
}

/// Per-element membership counts over one orbit; enough to evaluate any
/// statistic on its family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTally {
    pub family: Family,
    pub size: usize,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl OrbitTally {
    pub fn new(family: Family, n: usize, members: impl IntoIterator<Item = u64>) -> Self {
        let mut counts = vec![0u64; n];
        let mut size = 0;
        let mut total = 0;
        for b in members {
            size += 1;
            total += u64::from(b.count_ones());
            for (x, slot) in counts.iter_mut().enumerate() {
                *slot += b >> x & 1;
            }
        }
        OrbitTally {
            family,
            size,
            counts,
            total,
        }
    }

    pub fn of(f: &Fence, orbit: &Orbit) -> Self {
        OrbitTally::new(orbit.family(), f.len(), orbit.bits().iter().copied())
    }

    /// The ideal-orbit tally of an antichain orbit, via `Δ⁻¹` on each member.
    pub fn ideals_of(f: &Fence, antichain_orbit: &Orbit) -> Self {
        OrbitTally::new(
            Family::Ideals,
            f.len(),
            antichain_orbit.bits().iter().map(|&a| f.down_set(a)),
        )
    }

    /// Orbit sum of `e`.
    pub fn evaluate(&self, e: &StatExpr) -> Result<BigRational> {
        if let Some(fam) = e.family()? {
            if fam != self.family {
                return Err(FenceError::KindMismatch {
                    expected: fam.kind(),
                    found: self.family.kind(),
                });
            }
        }
        let mut v = &e.constant * BigRational::from_integer(BigInt::from(self.size));
        for (c, a) in &e.terms {
            let k = match *a {
                Atom::Chi(x) | Atom::ChiHat(x) => *self.counts.get(x).ok_or(
                    FenceError::ElementOutOfRange {
                        index: x + 1,
                        n: self.counts.len(),
                    },
                )?,
                Atom::Card | Atom::CardHat => self.total,
            };
            v += c * BigRational::from_integer(BigInt::from(k));
        }
        Ok(v)
    }
}

/// `Σ_{S∈O} e(S)`.
pub fn orbit_sum(f: &Fence, e: &StatExpr, orbit: &Orbit) -> Result<BigRational> {
    e.check(f, orbit.family())?;
    OrbitTally::of(f, orbit).evaluate(e)
}

/// Every single-element and cardinality statistic of one orbit, read on
/// the antichain side and on the ideal side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatTable {
    pub size: u64,
    /// `χ_x(O)` for each element.
    pub chi: Vec<u64>,
    /// `χ̂_x(O)` for each element.
    pub chi_hat: Vec<u64>,
    pub card: u64,
    pub card_hat: u64,
}

/// Direct orbit sums for an antichain orbit.
pub fn orbit_stats_direct(f: &Fence, antichain_orbit: &Orbit) -> StatTable {
    let a = OrbitTally::new(Family::Antichains, f.len(), antichain_orbit.bits().iter().copied());
    let i = OrbitTally::ideals_of(f, antichain_orbit);
    StatTable {
        size: a.size as u64,
        chi: a.counts,
        chi_hat: i.counts,
        card: a.total,
        card_hat: i.total,
    }
}

/// The statistics of the orbit encoded by `t`, computed only from its
/// tile counts and the composition.
pub fn orbit_stats_from_tiling(f: &Fence, t: &AlphaTiling) -> Result<StatTable> {
    if &t.alpha != f.alpha() {
        return Err(FenceError::InvalidTiling(format!(
            "tiling is for ({}), fence is ({})",
            t.alpha,
            f.alpha()
        )));
    }
    Ok(stats_from_counts(f, t.width as u64, &crate::tiling::tile_counts(t)))
}

pub fn stats_from_counts(f: &Fence, width: u64, tc: &TileCounts) -> StatTable {
    let alpha = f.alpha();
    let s = alpha.len();
    let b = |i: usize| tc.b(i) as u64;
    let r = |i: usize| tc.r(i) as u64;
    let a = |i: usize| alpha.part(i) as u64;
    let mut chi = vec![0; f.len()];
    let mut chi_hat = vec![0; f.len()];
    for i in 1..=s {
        for (j0, &x) in f.unshared_elements(i).iter().enumerate() {
            let j = j0 as u64 + 1;
            chi[x] = b(i);
            let top = if i % 2 == 0 { r(i - 1) } else { r(i) };
            chi_hat[x] = b(i) * (a(i) - j) + top;
        }
    }
    for k in 1..s {
        let x = f.shared_element(k).expect("shared index in range");
        chi[x] = r(k);
        chi_hat[x] = if k % 2 == 1 { r(k) } else { width - r(k) };
    }
    let card = (1..=s).map(|i| b(i) * a(i) - b(i) + r(i)).sum();
    let pairs: u64 = (1..=s)
        .map(|i| {
            let binom = a(i) * a(i).saturating_sub(1) / 2;
            b(i) * binom + r(2 * i - 1) * (a(2 * i - 1) + a(2 * i)).saturating_sub(1)
        })
        .sum();
    let minus: u64 = (1..=s).map(|i| r(2 * i)).sum();
    let card_hat = (s as u64 - 1) / 2 * width + pairs - minus;
    StatTable {
        size: width,
        chi,
        chi_hat,
        card,
        card_hat,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum MesyKind {
    Homomesic {
        #[serde(serialize_with = "serialize_ratio")]
        constant: BigRational,
    },
    Orbomesic,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitStat {
    pub size: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub sum: BigRational,
    #[serde(serialize_with = "serialize_ratio")]
    pub average: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MesyReport {
    pub kind: MesyKind,
    /// True for orbomesic and homomesic statistics.
    pub orbomesic: bool,
    pub per_orbit: Vec<OrbitStat>,
}

impl MesyReport {
    pub fn constant(&self) -> Option<&BigRational> {
        match &self.kind {
            MesyKind::Homomesic { constant } => Some(constant),
            _ => None,
        }
    }

    pub fn is_homomesic(&self) -> bool {
        self.constant().is_some()
    }
}

/// Classifies a list of `(orbit size, orbit sum)` pairs.
pub fn mesy_report(sums: Vec<(usize, BigRational)>) -> MesyReport {
    let per_orbit: Vec<OrbitStat> = sums
        .into_iter()
        .map(|(size, sum)| {
            let average = &sum / BigRational::from_integer(BigInt::from(size));
            OrbitStat { size, sum, average }
        })
        .collect();
    let mut by_size: BTreeMap<usize, &BigRational> = BTreeMap::new();
    let mut orbomesic = true;
    for o in &per_orbit {
        if let Some(prev) = by_size.insert(o.size, &o.sum) {
            if prev != &o.sum {
                orbomesic = false;
            }
        }
    }
    let homomesic = per_orbit.windows(2).all(|w| w[0].average == w[1].average);
    let kind = match per_orbit.first() {
        Some(o) if homomesic => MesyKind::Homomesic {
            constant: o.average.clone(),
        },
        None => MesyKind::Homomesic {
            constant: BigRational::zero(),
        },
        _ if orbomesic => MesyKind::Orbomesic,
        _ => MesyKind::Neither,
    };
    MesyReport {
        kind,
        orbomesic,
        per_orbit,
    }
}

/// Report for `e` over precomputed orbits.
pub fn mesy_over(f: &Fence, e: &StatExpr, orbits: &[Orbit]) -> Result<MesyReport> {
    let sums = orbits
        .iter()
        .map(|o| Ok((o.size(), orbit_sum(f, e, o)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(mesy_report(sums))
}

pub fn check_homomesy(f: &Fence, family: Family, e: &StatExpr) -> Result<MesyReport> {
    e.check(f, family)?;
    let orbits = orbits(f, family, crate::fence::DEFAULT_MAX_FAMILY)?;
    mesy_over(f, e, &orbits)
}

/// Same computation as [`check_homomesy`]; read the `orbomesic` flag.
pub fn check_orbomesy(f: &Fence, family: Family, e: &StatExpr) -> Result<MesyReport> {
    check_homomesy(f, family, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rowmotion::{antichain_orbits, orbit_of};
    use crate::tiling::tiling_of_orbit;

    fn f(alpha: &str) -> Fence {
        Fence::parse(alpha).unwrap()
    }

    fn e(s: &str) -> StatExpr {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_prints() {
        let x = e("2*chi[3] - chi[5] + 1/2");
        assert_eq!(x.terms, vec![(int(2), Atom::Chi(2)), (int(-1), Atom::Chi(4))]);
        assert_eq!(x.constant, ratio(1, 2));
        assert_eq!(x.to_string(), "2*chi[3] - chi[5] + 1/2");
        assert_eq!(e(" 2 chi [ 3 ]-chi[5]+1 / 2"), x);
        assert_eq!(e("chihat").terms, vec![(int(1), Atom::CardHat)]);
        assert_eq!(e("-chi").to_string(), "-chi");
        assert_eq!(e("3").to_string(), "3");
        assert_eq!(e("chi[1] - chi[1]").to_string(), "0");
        for bad in ["", "chi[0]", "foo", "chi[", "1/0", "2 chi 3", "chi +"] {
            assert!(bad.parse::<StatExpr>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn evaluation_on_single_sets() {
        let g = f("4,3,4");
        assert_eq!(eval_stat(&g, &e("chi"), &g.antichain(&[2, 6, 8]).unwrap()).unwrap(), int(3));
        let a = g.antichain(&[4, 10]).unwrap();
        assert_eq!(eval_stat(&g, &e("chi[4]"), &a).unwrap(), int(1));
        assert_eq!(eval_stat(&g, &e("5*chi[1] + chi[4]"), &a).unwrap(), int(1));
        let i = g.ideal(&[1]).unwrap();
        assert!(matches!(eval_stat(&g, &e("chi"), &i), Err(FenceError::KindMismatch { .. })));
        assert!(matches!(
            eval_stat(&g, &e("chi + chihat"), &a),
            Err(FenceError::MixedStatistic)
        ));
        assert!(eval_stat(&g, &e("chi[11]"), &a).is_err());
    }

    #[test]
    fn orbit_sums() {
        let g = f("5,4");
        let o = &antichain_orbits(&g).unwrap()[0];
        assert_eq!(orbit_sum(&g, &e("chi"), o).unwrap(), int(32));
        let h = f("4,3,4");
        let five = orbit_of(&h, &h.antichain(&[]).unwrap()).unwrap();
        assert_eq!(orbit_sum(&h, &e("chi"), &five).unwrap(), int(10));
        for o in antichain_orbits(&h).unwrap() {
            assert_eq!(orbit_sum(&h, &e("chi[5] - chi[6]"), &o).unwrap(), int(0));
        }
    }

    #[test]
    fn tiling_formulas_on_examples() {
        let h = f("4,3,4");
        let orbits = antichain_orbits(&h).unwrap();
        let o17 = orbits.iter().find(|o| o.size() == 17).unwrap();
        let t = tiling_of_orbit(&h, o17).unwrap();
        let table = orbit_stats_from_tiling(&h, &t).unwrap();
        assert_eq!(table.card, 36);
        assert_eq!(table, orbit_stats_direct(&h, o17));
        let g = f("5,4");
        let o = &antichain_orbits(&g).unwrap()[0];
        let table = orbit_stats_from_tiling(&g, &tiling_of_orbit(&g, o).unwrap()).unwrap();
        assert_eq!(table.card, 32);
        let s1 = g.shared_element(1).unwrap();
        assert_eq!(table.chi_hat[s1], 1);
    }

    #[test]
    fn homomesy_verdicts() {
        let h = f("4,3,4");
        let r = check_homomesy(&h, Family::Antichains, &e("chi[5] - chi[6]")).unwrap();
        assert_eq!(r.constant(), Some(&int(0)));
        let r = check_homomesy(&h, Family::Antichains, &e("4*chi[1] + chi[4]")).unwrap();
        assert_eq!(r.constant(), Some(&int(1)));
        for s in 1..=4 {
            let g = Fence::new(crate::fence::Composition::constant(2, s).unwrap()).unwrap();
            let r = check_homomesy(&g, Family::Antichains, &e("chi")).unwrap();
            assert_eq!(r.constant(), Some(&ratio(s as i64, 2)));
            assert!(r.orbomesic);
        }
        let g = f("4,4,4,4");
        let r = check_orbomesy(&g, Family::Antichains, &e("chi")).unwrap();
        assert_eq!(r.kind, MesyKind::Orbomesic);
        let r = check_homomesy(&f("3,3"), Family::Antichains, &e("3*chi[1] + chi[3]")).unwrap();
        assert_eq!(r.constant(), Some(&int(1)));
    }

    #[test]
    fn mesy_report_classification() {
        let r = mesy_report(vec![(2, int(2)), (3, int(4)), (2, int(2))]);
        assert_eq!(r.kind, MesyKind::Orbomesic);
        let r = mesy_report(vec![(2, int(2)), (2, int(3))]);
        assert_eq!(r.kind, MesyKind::Neither);
        assert!(!r.orbomesic);
        let r = mesy_report(vec![(2, int(3)), (4, int(6))]);
        assert_eq!(r.constant(), Some(&ratio(3, 2)));
    }

    #[test]
    fn report_serializes_rationals_as_strings() {
        let r = mesy_report(vec![(2, int(3))]);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["kind"]["verdict"], "homomesic");
        assert_eq!(v["kind"]["constant"], "3/2");
        assert_eq!(v["per_orbit"][0]["sum"], "3");
    }
}
