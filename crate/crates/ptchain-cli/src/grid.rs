//! Angle and grid parsing for command-line flags.
//!
//! Angles accept plain radians plus `pi` expressions (`pi`, `pi/2`,
//! `3pi/2`, `2pi`, `0.25pi`) so the usual anchor points can be typed
//! without transcription error. Grids accept either an explicit comma
//! list (`0,pi/2,pi`) or a range `START:END:COUNT` with COUNT evenly
//! spaced points including both ends.

/// Parse one angle in radians.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Some(idx) = t.find("pi") {
        let (coef_str, rest) = (&t[..idx], &t[idx + 2..]);
        let coef: f64 = if coef_str.is_empty() {
            1.0
        } else {
            coef_str.parse().map_err(|_| format!("bad angle coefficient in '{s}'"))?
        };
        let den: f64 = if rest.is_empty() {
            1.0
        } else if let Some(d) = rest.strip_prefix('/') {
            let d: f64 = d.parse().map_err(|_| format!("bad angle denominator in '{s}'"))?;
            if d == 0.0 {
                return Err(format!("zero denominator in '{s}'"));
            }
            d
        } else {
            return Err(format!("unexpected trailing '{rest}' in angle '{s}'"));
        };
        Ok(coef * std::f64::consts::PI / den)
    } else {
        t.parse().map_err(|_| format!("bad angle '{s}' (radians or '<a>pi/<b>')"))
    }
}

/// Parse a plain nonnegative float (used for kappa values).
pub fn parse_nonneg(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("bad number '{s}'"))?;
    if !v.is_finite() || v < 0.0 {
        return Err(format!("'{s}' must be a finite nonnegative number"));
    }
    Ok(v)
}

/// Parse a grid spec: `START:END:COUNT` or a comma list of values.
pub fn parse_grid<F>(s: &str, parse_elem: F) -> Result<Vec<f64>, String>
where
    F: Fn(&str) -> Result<f64, String>,
{
    let t = s.trim();
    let parts: Vec<&str> = t.split(':').collect();
    if parts.len() == 3 {
        let start = parse_elem(parts[0])?;
        let end = parse_elem(parts[1])?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("bad grid count '{}'", parts[2]))?;
        if count == 0 {
            return Err("grid count must be at least 1".to_string());
        }
        if count == 1 {
            if start != end {
                return Err("a 1-point range needs START == END".to_string());
            }
            return Ok(vec![start]);
        }
        Ok((0..count)
            .map(|i| start + (end - start) * i as f64 / (count - 1) as f64)
            .collect())
    } else if parts.len() == 1 {
        t.split(',').map(|e| parse_elem(e)).collect()
    } else {
        Err(format!("grid '{s}' must be START:END:COUNT or a comma list"))
    }
}
