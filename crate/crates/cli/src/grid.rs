//! Angle and grid parsing: "lo:hi:count" with "pi"-literals in the bounds.

/// Inclusive linear grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.hi
                } else {
                    self.lo + step * i as f64
                }
            })
            .collect()
    }
}

/// Parses an angle token: a float, or "pi" with an optional coefficient
/// and/or divisor ("pi", "2pi", "pi/2", "0.5pi", "3pi/4").
pub fn parse_angle(token: &str) -> Result<f64, String> {
    let s = token.trim();
    if let Ok(v) = s.parse::<f64>() {
        return Ok(v);
    }
    let Some(idx) = s.find("pi") else {
        return Err(format!("cannot parse angle '{token}'"));
    };
    let (head, tail) = (&s[..idx], &s[idx + 2..]);
    let coeff = if head.is_empty() {
        1.0
    } else {
        head.parse::<f64>()
            .map_err(|_| format!("cannot parse angle coefficient in '{token}'"))?
    };
    let divisor = if tail.is_empty() {
        1.0
    } else if let Some(d) = tail.strip_prefix('/') {
        d.parse::<f64>()
            .map_err(|_| format!("cannot parse angle divisor in '{token}'"))?
    } else {
        return Err(format!("cannot parse angle '{token}'"));
    };
    if divisor == 0.0 {
        return Err(format!("zero divisor in angle '{token}'"));
    }
    Ok(coeff * std::f64::consts::PI / divisor)
}

/// Parses "lo:hi:count" with angle-literal bounds and count ≥ 2.
pub fn parse_grid(spec: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid must be lo:hi:count, got '{spec}'"));
    }
    let lo = parse_angle(parts[0])?;
    let hi = parse_angle(parts[1])?;
    let count: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse grid count in '{spec}'"))?;
    if count < 2 {
        return Err(format!("grid count must be at least 2, got {count}"));
    }
    if !(hi > lo) {
        return Err(format!("grid needs hi > lo, got '{spec}'"));
    }
    Ok(GridSpec { lo, hi, count })
}
