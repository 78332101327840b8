//! Initial states written as sums like `0.1*sin2x - 0.05*cos6x`.

use bifurcate_core::spectral::{Mode, TrigPoly};

use crate::CliError;

pub fn parse_initial_state(text: &str, truncation: u32) -> Result<TrigPoly<f64>, CliError> {
    let bad = |msg: String| CliError::Config(format!("u0 = {text:?}: {msg}"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty".into()));
    }
    // split before every sign that is not part of an exponent
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-')
            && !matches!(bytes[i - 1], b'e' | b'E' | b'*' | b'+' | b'-')
        {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);

    let mut out = Vec::new();
    for term in terms {
        let term = term.strip_prefix('+').unwrap_or(term);
        let (coeff, wave) = match term.rsplit_once('*') {
            Some((c, w)) => (
                c.parse::<f64>()
                    .map_err(|e| bad(format!("coefficient {c:?}: {e}")))?,
                w,
            ),
            None => match term.strip_prefix('-') {
                Some(w) => (-1.0, w),
                None => (1.0, term),
            },
        };
        if !coeff.is_finite() {
            return Err(bad(format!("non-finite coefficient in {term:?}")));
        }
        let (is_sin, rest) = if let Some(r) = wave.strip_prefix("sin") {
            (true, r)
        } else if let Some(r) = wave.strip_prefix("cos") {
            (false, r)
        } else {
            return Err(bad(format!("expected sin<n>x or cos<n>x, got {wave:?}")));
        };
        let n: u32 = rest
            .strip_suffix('x')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| bad(format!("bad wavenumber in {wave:?}")))?;
        if n == 0 || !n.is_multiple_of(2) {
            return Err(bad(format!("wavenumber {n} must be even and positive")));
        }
        let k = n / 2;
        if k > truncation {
            return Err(bad(format!(
                "{wave} is above the truncation k <= {truncation}"
            )));
        }
        let mode =
            if is_sin { Mode::sin(k) } else { Mode::cos(k) }.map_err(|e| bad(e.to_string()))?;
        out.push((mode, coeff));
    }
    TrigPoly::from_terms(truncation, out).map_err(|e| bad(e.to_string()))
}
