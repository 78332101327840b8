use std::collections::BTreeMap;
use std::fmt;

use super::SpectralError;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Wave {
    Const,
    Sin,
    Cos,
}

impl Wave {
    pub fn as_str(self) -> &'static str {
        match self {
            Wave::Const => "const",
            Wave::Sin => "sin",
            Wave::Cos => "cos",
        }
    }
}

/// One basis function: `sin 2kx`, `cos 2kx` (k ≥ 1) or the constant.
///
/// Ordered by `k` first, so the constant sorts before every oscillating mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    k: u32,
    wave: Wave,
}

impl Mode {
    pub const CONST: Mode = Mode {
        k: 0,
        wave: Wave::Const,
    };

    pub fn sin(k: u32) -> Result<Mode, SpectralError> {
        Mode::new(Wave::Sin, k)
    }

    pub fn cos(k: u32) -> Result<Mode, SpectralError> {
        Mode::new(Wave::Cos, k)
    }

    pub fn new(wave: Wave, k: u32) -> Result<Mode, SpectralError> {
        match (wave, k) {
            (Wave::Const, 0) => Ok(Mode::CONST),
            (Wave::Const, _) => Err(SpectralError::InvalidMode(format!(
                "const mode with k = {k}"
            ))),
            (_, 0) => Err(SpectralError::InvalidMode(format!(
                "{} mode with k = 0",
                wave.as_str()
            ))),
            _ => Ok(Mode { k, wave }),
        }
    }

    pub fn k(self) -> u32 {
        self.k
    }

    pub fn wave(self) -> Wave {
        self.wave
    }

    pub fn is_const(self) -> bool {
        self.wave == Wave::Const
    }

    pub fn eval(self, x: f64) -> f64 {
        let arg = 2.0 * self.k as f64 * x;
        match self.wave {
            Wave::Const => 1.0,
            Wave::Sin => arg.sin(),
            Wave::Cos => arg.cos(),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.wave {
            Wave::Const => f.write_str("1"),
            w => write!(f, "{}{}x", w.as_str(), 2 * self.k),
        }
    }
}

/// Finite trigonometric polynomial `Σ c_m · m(x)` over [`Mode`]s with
/// `k ≤ truncation`. Coefficients are stored sparsely and are never zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly<S> {
    terms: BTreeMap<Mode, S>,
    truncation: u32,
}

impl<S: Scalar> TrigPoly<S> {
    pub fn zero(truncation: u32) -> Self {
        TrigPoly {
            terms: BTreeMap::new(),
            truncation,
        }
    }

    pub fn from_terms<I>(truncation: u32, terms: I) -> Result<Self, SpectralError>
    where
        I: IntoIterator<Item = (Mode, S)>,
    {
        let mut poly = TrigPoly::zero(truncation);
        for (mode, c) in terms {
            poly.check_mode(mode)?;
            poly.accumulate(mode, c);
        }
        Ok(poly)
    }

    /// `coefficient · mode` on its own.
    pub fn monomial(truncation: u32, mode: Mode, coefficient: S) -> Result<Self, SpectralError> {
        TrigPoly::from_terms(truncation, [(mode, coefficient)])
    }

    pub fn sin(k: u32, truncation: u32) -> Result<Self, SpectralError> {
        TrigPoly::monomial(truncation, Mode::sin(k)?, S::one())
    }

    pub fn cos(k: u32, truncation: u32) -> Result<Self, SpectralError> {
        TrigPoly::monomial(truncation, Mode::cos(k)?, S::one())
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mode, &S)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn get(&self, mode: Mode) -> Option<&S> {
        self.terms.get(&mode)
    }

    /// Coefficient of `mode`, zero when absent.
    pub fn coeff(&self, mode: Mode) -> S {
        self.terms.get(&mode).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant(&self) -> Option<&S> {
        self.terms.get(&Mode::CONST)
    }

    /// Member of the dotted (zero-mean) space.
    pub fn is_mean_zero(&self) -> bool {
        !self.terms.contains_key(&Mode::CONST)
    }

    pub fn max_k(&self) -> u32 {
        self.terms.keys().map(|m| m.k()).max().unwrap_or(0)
    }

    pub fn with_truncation(&self, truncation: u32) -> Result<Self, SpectralError> {
        if self.max_k() > truncation {
            return Err(SpectralError::TruncationOverflow {
                needed: self.max_k(),
                available: truncation,
            });
        }
        Ok(TrigPoly {
            terms: self.terms.clone(),
            truncation,
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = TrigPoly {
            terms: self.terms.clone(),
            truncation: self.truncation.max(other.truncation),
        };
        for (m, c) in &other.terms {
            out.accumulate(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return TrigPoly::zero(self.truncation);
        }
        self.map_coeffs(|c| c.clone() * factor.clone())
    }

    /// Applies `f` to every coefficient, dropping results that are zero.
    pub fn map_coeffs<F: Fn(&S) -> S>(&self, f: F) -> Self {
        TrigPoly::filtered(self.truncation, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Applies `f(mode, c)` to every term.
    pub fn map_terms<F: Fn(Mode, &S) -> S>(&self, f: F) -> Self {
        TrigPoly::filtered(
            self.truncation,
            self.terms.iter().map(|(m, c)| (*m, f(*m, c))),
        )
    }

    /// Keeps only terms whose mode satisfies `keep`.
    pub fn retain_modes<F: Fn(Mode) -> bool>(&self, keep: F) -> Self {
        TrigPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
            truncation: self.truncation,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SpectralError> {
        multiply_trig(self, other)
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.terms.iter().map(|(m, c)| c.to_f64() * m.eval(x)).sum()
    }

    pub fn to_float(&self) -> TrigPoly<f64> {
        TrigPoly::filtered(
            self.truncation,
            self.terms.iter().map(|(m, c)| (*m, c.to_f64())),
        )
    }

    /// Largest coefficient difference against `other`; exact kinds report 0
    /// only on equality.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other)
            .terms
            .values()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    fn filtered<I: Iterator<Item = (Mode, S)>>(truncation: u32, it: I) -> Self {
        TrigPoly {
            terms: it.filter(|(_, c)| !c.is_zero()).collect(),
            truncation,
        }
    }

    fn check_mode(&self, mode: Mode) -> Result<(), SpectralError> {
        if mode.k() > self.truncation {
            return Err(SpectralError::TruncationOverflow {
                needed: mode.k(),
                available: self.truncation,
            });
        }
        Ok(())
    }

    pub(crate) fn accumulate(&mut self, mode: Mode, c: S) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&mode) {
            Some(prev) => prev + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(mode, sum);
        }
    }

    fn accumulate_sin(&mut self, n: i64, c: S) {
        match n.cmp(&0) {
            std::cmp::Ordering::Greater => self.accumulate(
                Mode {
                    k: n as u32,
                    wave: Wave::Sin,
                },
                c,
            ),
            std::cmp::Ordering::Less => self.accumulate(
                Mode {
                    k: (-n) as u32,
                    wave: Wave::Sin,
                },
                -c,
            ),
            std::cmp::Ordering::Equal => {}
        }
    }

    fn accumulate_cos(&mut self, n: i64, c: S) {
        if n == 0 {
            self.accumulate(Mode::CONST, c);
        } else {
            self.accumulate(
                Mode {
                    k: n.unsigned_abs() as u32,
                    wave: Wave::Cos,
                },
                c,
            );
        }
    }
}

impl<S: Scalar> fmt::Display for TrigPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let (n, d) = c.encode();
            if d == "1" {
                write!(f, "({n}) {m}")?;
            } else {
                write!(f, "({n}/{d}) {m}")?;
            }
        }
        Ok(())
    }
}

/// Product of two trigonometric polynomials by product-to-sum expansion.
///
/// The result lives at the larger of the two truncations; a product
/// wavenumber beyond it is an error rather than being dropped.
pub fn multiply_trig<S: Scalar>(
    a: &TrigPoly<S>,
    b: &TrigPoly<S>,
) -> Result<TrigPoly<S>, SpectralError> {
    let truncation = a.truncation.max(b.truncation);
    let needed = a.max_k() + b.max_k();
    if !a.is_zero() && !b.is_zero() && needed > truncation {
        return Err(SpectralError::TruncationOverflow {
            needed,
            available: truncation,
        });
    }
    let half = S::half();
    let mut out = TrigPoly::zero(truncation);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let c = ca.clone() * cb.clone();
            let (p, q) = (ma.k as i64, mb.k as i64);
            let h = c.clone() * half.clone();
            match (ma.wave, mb.wave) {
                (Wave::Const, _) => out.accumulate(*mb, c),
                (_, Wave::Const) => out.accumulate(*ma, c),
                // sin p sin q = ½[cos(p−q) − cos(p+q)]
                (Wave::Sin, Wave::Sin) => {
                    out.accumulate_cos(p - q, h.clone());
                    out.accumulate_cos(p + q, -h);
                }
                // cos p cos q = ½[cos(p−q) + cos(p+q)]
                (Wave::Cos, Wave::Cos) => {
                    out.accumulate_cos(p - q, h.clone());
                    out.accumulate_cos(p + q, h);
                }
                // sin p cos q = ½[sin(p+q) + sin(p−q)]
                (Wave::Sin, Wave::Cos) => {
                    out.accumulate_sin(p + q, h.clone());
                    out.accumulate_sin(p - q, h);
                }
                (Wave::Cos, Wave::Sin) => {
                    out.accumulate_sin(q + p, h.clone());
                    out.accumulate_sin(q - p, h);
                }
            }
        }
    }
    Ok(out)
}
