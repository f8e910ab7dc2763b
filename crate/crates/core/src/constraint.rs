//! Gap constraints `(f, g)`: exact evaluation, admissibility and the
//! derivative / gap-spread calculus behind the linear bound.
//!
//! Suprema are taken over the finite domain `1..=X` of the constraint. For the
//! analytic kinds (`alpha`, `band`, `affine`) the domain is a parameter; a
//! table fixes it to the number of rows.

use std::fmt;
use std::fs;
use std::path::Path;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, neg_part, parse_rational, pos_part, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintKind {
    /// `f(x) = (α-1)x`, `g(x) = min{1, α-1}`.
    Alpha(Rational),
    /// Constant gap band `gmin ≤ |v| ≤ gmax`.
    Band { gmin: Rational, gmax: Rational },
    /// `f(x) = ax + b`, `g(x) = cx + d`.
    Affine {
        a: Rational,
        b: Rational,
        c: Rational,
        d: Rational,
    },
    /// Row `x-1` holds `(f(x), g(x))`.
    Table(Vec<(Rational, Rational)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapConstraint {
    kind: ConstraintKind,
    domain: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintStats {
    pub domain: u64,
    pub dplus_f: Rational,
    pub dminus_f: Rational,
    pub dplus_g: Rational,
    pub dminus_g: Rational,
    /// `max{∂⁺_f, ∂⁻_g}`; always present on a finite domain.
    pub da: Option<Rational>,
    /// `max{∂⁻_f, ∂⁺_g}`; always present on a finite domain.
    pub db: Option<Rational>,
    /// `∂_{f,g}`
    pub d: Rational,
    /// `Δ_{f,g} = max_x (f(x) - g(x)) / x`
    pub delta: Rational,
}

/// Integer gap window `[⌈g(c)⌉, ⌊f(c)⌋]` per copy length, for hot loops.
#[derive(Debug, Clone)]
pub struct Admission {
    ranges: Vec<(i128, i128)>,
}

impl Admission {
    pub fn range(&self, c: usize) -> Option<(i128, i128)> {
        c.checked_sub(1).and_then(|i| self.ranges.get(i)).copied()
    }

    pub fn admits(&self, c: usize, gap: usize) -> bool {
        self.range(c)
            .is_some_and(|(lo, hi)| lo <= gap as i128 && gap as i128 <= hi)
    }
}

impl GapConstraint {
    fn validated(kind: ConstraintKind, domain: u64) -> Result<Self> {
        if domain == 0 {
            return Err(Error::Usage("constraint domain must be at least 1".into()));
        }
        let con = GapConstraint { kind, domain };
        for x in 1..=domain {
            let (f, g) = (con.f_unchecked(x), con.g_unchecked(x));
            if g <= Rational::zero() || f < g {
                return Err(Error::Usage(format!(
                    "constraint needs 0 < g(x) ≤ f(x); at x={x} f={} g={}",
                    format_rational(&f),
                    format_rational(&g)
                )));
            }
        }
        Ok(con)
    }

    pub fn alpha(alpha: Rational, domain: u64) -> Result<Self> {
        if alpha <= Rational::one() {
            return Err(Error::Usage(format!(
                "alpha must exceed 1, got {}",
                format_rational(&alpha)
            )));
        }
        Self::validated(ConstraintKind::Alpha(alpha), domain)
    }

    pub fn band(gmin: Rational, gmax: Rational, domain: u64) -> Result<Self> {
        Self::validated(ConstraintKind::Band { gmin, gmax }, domain)
    }

    pub fn affine(a: Rational, b: Rational, c: Rational, d: Rational, domain: u64) -> Result<Self> {
        Self::validated(ConstraintKind::Affine { a, b, c, d }, domain)
    }

    /// Rows `(x, f(x), g(x))` in any order; they must cover `1..=X` exactly once.
    pub fn table(rows: Vec<(u64, Rational, Rational)>) -> Result<Self> {
        let len = rows.len();
        let mut values = vec![None; len];
        for (x, f, g) in rows {
            let slot = x
                .checked_sub(1)
                .and_then(|i| values.get_mut(i as usize))
                .ok_or_else(|| Error::Usage(format!("table row x={x} outside 1..={len}")))?;
            if slot.replace((f, g)).is_some() {
                return Err(Error::Usage(format!("table row x={x} repeated")));
            }
        }
        let values: Vec<(Rational, Rational)> = values.into_iter().map(Option::unwrap).collect();
        let domain = values.len() as u64;
        Self::validated(ConstraintKind::Table(values), domain)
    }

    /// Parses TSV lines `x<TAB>f(x)<TAB>g(x)`; blank lines and `#` comments are skipped.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(Error::Usage(format!(
                    "table line {}: expected 3 tab-separated fields",
                    lineno + 1
                )));
            }
            let x: u64 = fields[0]
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("table line {}: bad x", lineno + 1)))?;
            rows.push((x, parse_rational(fields[1])?, parse_rational(fields[2])?));
        }
        if rows.is_empty() {
            return Err(Error::Usage("empty constraint table".into()));
        }
        Self::table(rows)
    }

    /// Parses `alpha:<r>`, `band:<r>:<r>`, `affine:<a>:<b>:<c>:<d>` or
    /// `table:<path>`. `domain` applies to the analytic kinds only.
    pub fn parse(spec: &str, domain: u64) -> Result<Self> {
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Usage(format!("malformed constraint `{spec}`")))?;
        let nums = |count: usize| -> Result<Vec<Rational>> {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != count {
                return Err(Error::Usage(format!(
                    "`{kind}` takes {count} value(s), got `{rest}`"
                )));
            }
            parts.into_iter().map(parse_rational).collect()
        };
        match kind {
            "alpha" => Self::alpha(nums(1)?[0], domain),
            "band" => {
                let v = nums(2)?;
                Self::band(v[0], v[1], domain)
            }
            "affine" => {
                let v = nums(4)?;
                Self::affine(v[0], v[1], v[2], v[3], domain)
            }
            "table" => {
                let text = fs::read_to_string(Path::new(rest))?;
                Self::parse_table(&text)
            }
            other => Err(Error::Usage(format!("unknown constraint kind `{other}`"))),
        }
    }

    pub fn kind(&self) -> &ConstraintKind {
        &self.kind
    }

    pub fn domain(&self) -> u64 {
        self.domain
    }

    /// Same constraint over `1..=domain`. Tables can only shrink.
    pub fn with_domain(&self, domain: u64) -> Result<Self> {
        match &self.kind {
            ConstraintKind::Table(values) => {
                if domain > values.len() as u64 {
                    return Err(Error::Domain {
                        x: domain,
                        max: values.len() as u64,
                    });
                }
                Self::validated(
                    ConstraintKind::Table(values[..domain as usize].to_vec()),
                    domain,
                )
            }
            kind => Self::validated(kind.clone(), domain),
        }
    }

    /// Widens an analytic constraint to at least `domain`; tables are kept as is.
    pub fn widened(&self, domain: u64) -> Result<Self> {
        match &self.kind {
            ConstraintKind::Table(_) => Ok(self.clone()),
            _ if domain <= self.domain => Ok(self.clone()),
            kind => Self::validated(kind.clone(), domain),
        }
    }

    fn f_unchecked(&self, x: u64) -> Rational {
        let xr = int(x);
        match &self.kind {
            ConstraintKind::Alpha(alpha) => (alpha - Rational::one()) * xr,
            ConstraintKind::Band { gmax, .. } => *gmax,
            ConstraintKind::Affine { a, b, .. } => a * xr + b,
            ConstraintKind::Table(values) => values[(x - 1) as usize].0,
        }
    }

    fn g_unchecked(&self, x: u64) -> Rational {
        match &self.kind {
            ConstraintKind::Alpha(alpha) => (alpha - Rational::one()).min(Rational::one()),
            ConstraintKind::Band { gmin, .. } => *gmin,
            ConstraintKind::Affine { c, d, .. } => c * int(x) + d,
            ConstraintKind::Table(values) => values[(x - 1) as usize].1,
        }
    }

    fn check_domain(&self, x: u64) -> Result<()> {
        if x == 0 || x > self.domain {
            Err(Error::Domain {
                x,
                max: self.domain,
            })
        } else {
            Ok(())
        }
    }

    pub fn eval_f(&self, x: u64) -> Result<Rational> {
        self.check_domain(x)?;
        Ok(self.f_unchecked(x))
    }

    pub fn eval_g(&self, x: u64) -> Result<Rational> {
        self.check_domain(x)?;
        Ok(self.g_unchecked(x))
    }

    /// `g(c) ≤ gap ≤ f(c)`, inclusive at both ends.
    pub fn admits(&self, c: u64, gap: u64) -> Result<bool> {
        self.check_domain(c)?;
        let gap = int(gap);
        Ok(self.g_unchecked(c) <= gap && gap <= self.f_unchecked(c))
    }

    pub fn admission(&self, max_c: usize) -> Result<Admission> {
        if max_c as u64 > self.domain {
            return Err(Error::Domain {
                x: max_c as u64,
                max: self.domain,
            });
        }
        let ranges = (1..=max_c as u64)
            .map(|c| {
                let lo = self.g_unchecked(c).ceil().to_integer();
                let hi = self.f_unchecked(c).floor().to_integer();
                (lo, hi)
            })
            .collect();
        Ok(Admission { ranges })
    }

    /// `f(x)`, `g(x)` for `x = 1..=domain`; index `x - 1`.
    pub fn tabulate(&self) -> (Vec<Rational>, Vec<Rational>) {
        (1..=self.domain)
            .map(|x| (self.f_unchecked(x), self.g_unchecked(x)))
            .unzip()
    }

    pub fn stats(&self) -> ConstraintStats {
        self.stats_upto(self.domain)
    }

    fn stats_upto(&self, domain: u64) -> ConstraintStats {
        let zero = Rational::zero();
        let (mut dplus_f, mut dminus_f, mut dplus_g, mut dminus_g) = (zero, zero, zero, zero);
        let mut delta = zero;
        let mut prev: Option<(Rational, Rational)> = None;
        for x in 1..=domain {
            let (f, g) = (self.f_unchecked(x), self.g_unchecked(x));
            if let Some((pf, pg)) = prev {
                dplus_f = dplus_f.max(pos_part(f - pf));
                dminus_f = dminus_f.max(neg_part(f - pf));
                dplus_g = dplus_g.max(pos_part(g - pg));
                dminus_g = dminus_g.max(neg_part(g - pg));
            }
            delta = delta.max((f - g) / int(x));
            prev = Some((f, g));
        }
        let da = dplus_f.max(dminus_g);
        let db = dminus_f.max(dplus_g);
        ConstraintStats {
            domain,
            dplus_f,
            dminus_f,
            dplus_g,
            dminus_g,
            da: Some(da),
            db: Some(db),
            d: da.min(db),
            delta,
        }
    }

    /// True when `∂` or `Δ` over `1..=X` exceeds its value over `1..=X/2`,
    /// a hint that the supremum over all of ℕ may not exist.
    pub fn grows_with_domain(&self) -> bool {
        let full = self.stats();
        let half = self.stats_upto((self.domain / 2).max(1));
        full.d > half.d || full.delta > half.delta
    }
}

impl fmt::Display for GapConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = format_rational;
        match &self.kind {
            ConstraintKind::Alpha(a) => write!(f, "alpha:{}", r(a)),
            ConstraintKind::Band { gmin, gmax } => write!(f, "band:{}:{}", r(gmin), r(gmax)),
            ConstraintKind::Affine { a, b, c, d } => {
                write!(f, "affine:{}:{}:{}:{}", r(a), r(b), r(c), r(d))
            }
            ConstraintKind::Table(values) => write!(f, "table[{}]", values.len()),
        }
    }
}

/// `n·(1 + max{∂, Δ})`.
pub fn bound_value(n: u64, stats: &ConstraintStats) -> Rational {
    int(n) * (Rational::one() + stats.d.max(stats.delta))
}
