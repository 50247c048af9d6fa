//! Möbius maps with cyclotomic entries, Laurent curves in the two-torus,
//! translates by roots of unity and the conjugate families used to trap
//! torsion points.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::cyclotomic::{lcm, CycloNum, GaloisMap, RootOfUnity};
use crate::poly::{BiPoly, UniPoly};
use crate::polytope::{difference_lattice, LatticePoint};
use crate::{Error, Result};

/// `x ↦ (ax + b)/(cx + d)` with `ad − bc ≠ 0`, scaled so that the first
/// nonzero entry in the order `a, b, c, d` is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusMap {
    a: CycloNum,
    b: CycloNum,
    c: CycloNum,
    d: CycloNum,
}

impl MobiusMap {
    pub fn new(a: CycloNum, b: CycloNum, c: CycloNum, d: CycloNum) -> Result<Self> {
        let det = a.checked_mul(&d)?.checked_sub(&b.checked_mul(&c)?)?;
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let lead = [&a, &b, &c, &d]
            .into_iter()
            .find(|e| !e.is_zero())
            .cloned()
            .expect("nonzero determinant");
        let scale =
            |e: &CycloNum| -> Result<CycloNum> { Ok(e.checked_div(&lead)?.conductor_reduce()) };
        Ok(MobiusMap {
            a: scale(&a)?,
            b: scale(&b)?,
            c: scale(&c)?,
            d: scale(&d)?,
        })
    }

    pub fn identity() -> Self {
        Self::new(
            CycloNum::one(),
            CycloNum::zero(),
            CycloNum::zero(),
            CycloNum::one(),
        )
        .expect("invertible")
    }

    /// `x ↦ r·x`.
    pub fn rotation(r: RootOfUnity) -> Self {
        let z = CycloNum::root_of_unity(r, r.order()).expect("order within limit");
        Self::new(z, CycloNum::zero(), CycloNum::zero(), CycloNum::one()).expect("invertible")
    }

    /// `x ↦ r/x`.
    pub fn reflection(r: RootOfUnity) -> Self {
        let z = CycloNum::root_of_unity(r, r.order()).expect("order within limit");
        Self::new(CycloNum::zero(), z, CycloNum::one(), CycloNum::zero()).expect("invertible")
    }

    pub fn entries(&self) -> [&CycloNum; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Least common level of the entries.
    pub fn level(&self) -> u64 {
        self.entries().iter().map(|e| e.level()).fold(1, lcm)
    }

    /// The composite `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let m = |p: &CycloNum, q: &CycloNum, r: &CycloNum, s: &CycloNum| -> Result<CycloNum> {
            p.checked_mul(q)?.checked_add(&r.checked_mul(s)?)
        };
        Self::new(
            m(&self.a, &other.a, &self.b, &other.c)?,
            m(&self.a, &other.b, &self.b, &other.d)?,
            m(&self.c, &other.a, &self.d, &other.c)?,
            m(&self.c, &other.b, &self.d, &other.d)?,
        )
    }

    /// Image of a finite point, `None` at the pole.
    pub fn image(&self, x: &CycloNum) -> Result<Option<CycloNum>> {
        let num = self.a.checked_mul(x)?.checked_add(&self.b)?;
        let den = self.c.checked_mul(x)?.checked_add(&self.d)?;
        if den.is_zero() {
            return Ok(None);
        }
        Ok(Some(num.checked_div(&den)?))
    }

    /// Membership in the group generated by `x ↦ ζx` and `x ↦ 1/x` over
    /// all roots of unity `ζ`.
    pub fn in_h(&self) -> bool {
        let ratio_is_root = |p: &CycloNum, q: &CycloNum| {
            p.checked_div(q)
                .ok()
                .and_then(|r| r.as_root_of_unity())
                .is_some()
        };
        (self.b.is_zero() && self.c.is_zero() && ratio_is_root(&self.a, &self.d))
            || (self.a.is_zero() && self.d.is_zero() && ratio_is_root(&self.b, &self.c))
    }

    /// The curve `(ax + b) − (cx + d)y` cut out by the graph of the map.
    pub fn graph_curve(&self) -> TorusCurve {
        graph_curve(self)
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.level();
        let show = |e: &CycloNum| e.lift(l).map(|v| v.to_expression("z")).unwrap_or_default();
        write!(
            f,
            "[[{}, {}], [{}, {}]] over Q(z), z = ζ{}",
            show(&self.a),
            show(&self.b),
            show(&self.c),
            show(&self.d),
            l
        )
    }
}

/// A Laurent polynomial `Σ c_ij x^i y^j` up to scaling. The coefficient of
/// the lexicographically smallest exponent pair is 1 and the level is the
/// conductor of the remaining coefficients, so equal zero sets of the same
/// polynomial compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct TorusCurve {
    level: u64,
    terms: BTreeMap<LatticePoint, CycloNum>,
}

impl TorusCurve {
    pub fn new(terms: impl IntoIterator<Item = (LatticePoint, CycloNum)>) -> Result<Self> {
        let mut map: BTreeMap<LatticePoint, CycloNum> = BTreeMap::new();
        for (k, c) in terms {
            let entry = map.entry(k).or_insert_with(CycloNum::zero);
            *entry = entry.checked_add(&c)?;
        }
        map.retain(|_, c| !c.is_zero());
        let lead = map.values().next().cloned().ok_or(Error::EmptyCurve)?;
        let mut level = 1;
        for c in map.values_mut() {
            *c = c.checked_div(&lead)?.conductor_reduce();
            level = lcm(level, c.level());
        }
        for c in map.values_mut() {
            *c = c.lift(level)?;
        }
        Ok(TorusCurve { level, terms: map })
    }

    /// Conductor of the coefficient field.
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, CycloNum> {
        &self.terms
    }

    pub fn coefficient(&self, i: i64, j: i64) -> CycloNum {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(CycloNum::zero)
    }

    /// True when every exponent lies in `{0, 1}²`.
    pub fn is_bilinear(&self) -> bool {
        self.terms
            .keys()
            .all(|&(i, j)| (0..=1).contains(&i) && (0..=1).contains(&j))
    }

    /// Value at an arbitrary point of the torus.
    pub fn eval(&self, x: &CycloNum, y: &CycloNum) -> Result<CycloNum> {
        let mut acc = CycloNum::zero();
        for (&(i, j), c) in &self.terms {
            acc = acc.checked_add(&c.checked_mul(&x.pow(i)?)?.checked_mul(&y.pow(j)?)?)?;
        }
        Ok(acc)
    }

    /// Value at `(x, y)`, computed at level `lcm(level, order x, order y)`.
    pub fn eval_at_roots(&self, x: RootOfUnity, y: RootOfUnity) -> Result<CycloNum> {
        let l = lcm(self.level, lcm(x.order(), y.order()));
        let (sx, sy) = ((l / x.order()) as i64, (l / y.order()) as i64);
        let (ex, ey) = (x.exponent() as i64 * sx, y.exponent() as i64 * sy);
        let mut acc = CycloNum::zero().lift(l)?;
        for (&(i, j), c) in &self.terms {
            let e = (i * ex + j * ey).rem_euclid(l as i64);
            acc = acc.checked_add(&c.lift(l)?.mul_zeta_pow(e))?;
        }
        Ok(acc)
    }

    pub fn vanishes_at(&self, x: RootOfUnity, y: RootOfUnity) -> Result<bool> {
        Ok(self.eval_at_roots(x, y)?.is_zero())
    }

    /// `f(α·x^p, β·y^q)`.
    pub fn substitute(
        &self,
        alpha: RootOfUnity,
        p: i64,
        beta: RootOfUnity,
        q: i64,
    ) -> Result<Self> {
        let l = lcm(self.level, lcm(alpha.order(), beta.order()));
        let terms = self
            .terms
            .iter()
            .map(|(&(i, j), c)| {
                let r = alpha.pow(i) * beta.pow(j);
                let e = r.exponent() * (l / r.order());
                Ok(((p * i, q * j), c.lift(l)?.mul_zeta_pow(e as i64)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(terms)
    }

    /// Applies `s` to every coefficient.
    pub fn galois(&self, s: GaloisMap) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| Ok((k, s.apply(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(terms)
    }

    /// Dense form with exponents shifted to start at 0: rows indexed by the
    /// power of `y`, entries polynomials in `x` over `Q(ζ_level)`. Returns
    /// the shift `(min i, min j)` as well.
    pub fn to_bipoly(&self, level: u64) -> Result<(BiPoly, LatticePoint)> {
        let imin = self.terms.keys().map(|k| k.0).min().unwrap_or(0);
        let jmin = self.terms.keys().map(|k| k.1).min().unwrap_or(0);
        let jmax = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let imax = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let zero = CycloNum::zero().lift(level)?;
        let mut rows =
            alloc::vec![alloc::vec![zero; (imax - imin + 1) as usize]; (jmax - jmin + 1) as usize];
        for (&(i, j), c) in &self.terms {
            rows[(j - jmin) as usize][(i - imin) as usize] = c.lift(level)?;
        }
        let bi = rows
            .into_iter()
            .map(|r| UniPoly::new(level, r))
            .collect::<Result<BiPoly>>()?;
        Ok((bi, (imin, jmin)))
    }

    /// Human-readable form with `z = ζ_level`, highest exponents first.
    pub fn to_expression(&self) -> String {
        let mut out = String::new();
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let mono = monomial(i, j);
            let coef = c.to_expression("z");
            let (neg, body) = match coef.strip_prefix('-') {
                Some(rest) if !rest.contains([' ']) => (true, String::from(rest)),
                _ => (false, coef.clone()),
            };
            let compound = body.contains(' ');
            let piece = match (mono.is_empty(), body.as_str()) {
                (true, _) => {
                    if compound {
                        alloc::format!("({body})")
                    } else {
                        body.clone()
                    }
                }
                (false, "1") => mono.clone(),
                (false, _) if compound => alloc::format!("({body})*{mono}"),
                (false, _) => alloc::format!("{body}*{mono}"),
            };
            match (n, neg) {
                (0, true) => out.push_str(&alloc::format!("-{piece}")),
                (0, false) => out.push_str(&piece),
                (_, true) => out.push_str(&alloc::format!(" - {piece}")),
                (_, false) => out.push_str(&alloc::format!(" + {piece}")),
            }
        }
        out
    }
}

fn monomial(i: i64, j: i64) -> String {
    let var = |v: &str, e: i64| match e {
        0 => String::new(),
        1 => String::from(v),
        _ => alloc::format!("{v}^{e}"),
    };
    let (a, b) = (var("x", i), var("y", j));
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b,
        (_, true) => a,
        _ => alloc::format!("{a}*{b}"),
    }
}

impl fmt::Display for TorusCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression())
    }
}

impl fmt::Debug for TorusCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusCurve[{}]({})", self.level, self.to_expression())
    }
}

/// `(ax + b) − (cx + d)y`.
pub fn graph_curve(g: &MobiusMap) -> TorusCurve {
    TorusCurve::new([
        ((1, 0), g.a.clone()),
        ((0, 0), g.b.clone()),
        ((1, 1), -&g.c),
        ((0, 1), -&g.d),
    ])
    .expect("a Möbius map has a nonzero entry")
}

/// The translate `f(z1⁻¹x, z2⁻¹y)`, whose zero set is the zero set of `f`
/// moved by `(z1, z2)`.
pub fn translate_curve(f: &TorusCurve, z1: RootOfUnity, z2: RootOfUnity) -> Result<TorusCurve> {
    f.substitute(z1.inv(), 1, z2.inv(), 1)
}

/// Outcome of the translate search: `curve(x, y) = f(zx·x, zy·y)` has
/// coefficient field of conductor `conductor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalTranslate {
    pub curve: TorusCurve,
    pub zx: RootOfUnity,
    pub zy: RootOfUnity,
    pub conductor: u64,
}

/// Default search modulus `2·lcm(level, 4)`.
pub fn default_translate_modulus(f: &TorusCurve) -> u64 {
    2 * lcm(f.level(), 4)
}

/// Searches `f(ζ_D^s x, ζ_D^t y)` over `0 ≤ s, t < D` for the smallest
/// conductor, preferring the lexicographically first `(s, t)` among ties.
/// `D` defaults to [`default_translate_modulus`].
pub fn minimal_translate(f: &TorusCurve, modulus: Option<u64>) -> Result<MinimalTranslate> {
    let info = difference_lattice(f);
    if info.rank < 2 {
        return Err(Error::DegenerateLattice(info.rank));
    }
    let d = modulus.unwrap_or_else(|| default_translate_modulus(f));
    if d == 0 {
        return Err(Error::ZeroOrder);
    }
    let l = lcm(f.level(), d);
    let (i0, j0) = *f.terms().keys().next().expect("nonempty");
    // Conductor of c·ζ_D^u for every term and every residue u.
    let mut rows: Vec<(i64, i64, Vec<u64>)> = Vec::new();
    for (&(i, j), c) in f.terms().iter().skip(1) {
        let base = c.lift(l)?;
        let step = (l / d) as i64;
        let conds = (0..d as i64)
            .map(|u| base.mul_zeta_pow(u * step).conductor())
            .collect();
        rows.push((i - i0, j - j0, conds));
    }
    let di = d as i64;
    let mut best: Option<(u64, i64, i64)> = None;
    for s in 0..di {
        for t in 0..di {
            let mut n = 1;
            for (a, b, conds) in &rows {
                n = lcm(n, conds[(s * a + t * b).rem_euclid(di) as usize]);
                if best.is_some_and(|(m, _, _)| n >= m) {
                    break;
                }
            }
            if best.is_none_or(|(m, _, _)| n < m) {
                best = Some((n, s, t));
            }
        }
    }
    let (conductor, s, t) = best.expect("nonempty search space");
    let zx = RootOfUnity::new(d, s)?;
    let zy = RootOfUnity::new(d, t)?;
    let curve = f.substitute(zx, 1, zy, 1)?;
    debug_assert_eq!(curve.level(), conductor);
    Ok(MinimalTranslate {
        curve,
        zx,
        zy,
        conductor,
    })
}

/// Case tags of the enumeration strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyCase {
    /// Rank-1 or rank-0 support: a binomial in a single monomial.
    II,
    /// Rational coefficients.
    III,
    /// Odd conductor above 1.
    IV,
    /// Conductor divisible by 4.
    V,
}

impl FamilyCase {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyCase::II => "ii",
            FamilyCase::III => "iii",
            FamilyCase::IV => "iv",
            FamilyCase::V => "v",
        }
    }
}

impl fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Seven twisted copies of `f` such that every torsion point of `f = 0`
/// lies on at least one of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateFamily {
    pub case: FamilyCase,
    /// The Galois twist used for the last four members (`σ` or `τ`).
    pub twist: GaloisMap,
    pub members: Vec<(String, TorusCurve)>,
}

/// Builds the family for `f` with coefficients in `Q(ζ_n)`.
///
/// For `n` odd the last four members are `f^σ(±x², ±y²)` with
/// `σ: ζ_n ↦ ζ_n²` (plain `f(±x², ±y²)` when `n = 1`). For `4 | n` they
/// are `f^τ, f1^τ, f2^τ, f3^τ` with `τ: ζ_n ↦ −ζ_n`.
pub fn conjugate_family(f: &TorusCurve, n: u64) -> Result<ConjugateFamily> {
    if n == 0 {
        return Err(Error::ZeroLevel);
    }
    if n % 4 == 2 {
        return Err(Error::NonMinimalLevel(n));
    }
    if !n.is_multiple_of(f.level()) {
        return Err(Error::LevelMismatch {
            from: f.level(),
            to: n,
        });
    }
    let one = RootOfUnity::one();
    let minus = RootOfUnity::minus_one();
    let f1 = f.substitute(one, 1, minus, 1)?;
    let f2 = f.substitute(minus, 1, one, 1)?;
    let f3 = f.substitute(minus, 1, minus, 1)?;
    let name = |s: &str| String::from(s);
    if n % 2 == 1 {
        let case = if n == 1 {
            FamilyCase::III
        } else {
            FamilyCase::IV
        };
        let sigma = GaloisMap::new(n, 2)?;
        let g = f.galois(sigma)?;
        let signs = [(one, one), (one, minus), (minus, one), (minus, minus)];
        let mut members = alloc::vec![(name("f1"), f1), (name("f2"), f2), (name("f3"), f3)];
        for (k, (sx, sy)) in signs.into_iter().enumerate() {
            members.push((alloc::format!("f{}", k + 4), g.substitute(sx, 2, sy, 2)?));
        }
        Ok(ConjugateFamily {
            case,
            twist: sigma,
            members,
        })
    } else {
        let tau = GaloisMap::new(n, (1 + n / 2) as i64)?;
        let ft = f.galois(tau)?;
        let f1t = f1.galois(tau)?;
        let f2t = f2.galois(tau)?;
        let f3t = f3.galois(tau)?;
        let members = alloc::vec![
            (name("f1"), f1),
            (name("f2"), f2),
            (name("f3"), f3),
            (name("f^τ"), ft),
            (name("f1^τ"), f1t),
            (name("f2^τ"), f2t),
            (name("f3^τ"), f3t),
        ];
        Ok(ConjugateFamily {
            case: FamilyCase::V,
            twist: tau,
            members,
        })
    }
}
