use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Starting field `u(z, 0)` on `[0, π]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialCondition {
    /// `sin(j z)`.
    Sine { j: usize },
    /// Indicator of the closed interval `[a, b]`.
    Characteristic { a: f64, b: f64 },
    /// Values at the interior grid points `z_i = iπ/(N+1)`, `i = 1..=N`.
    Samples { values: Vec<f64> },
}

impl InitialCondition {
    pub fn sine(j: usize) -> Result<Self> {
        let ic = InitialCondition::Sine { j };
        ic.validate()?;
        Ok(ic)
    }

    pub fn characteristic(a: f64, b: f64) -> Result<Self> {
        let ic = InitialCondition::Characteristic { a, b };
        ic.validate()?;
        Ok(ic)
    }

    /// The default characteristic function, on `[π/4, π/2]`.
    pub fn default_characteristic() -> Self {
        InitialCondition::Characteristic {
            a: PI / 4.0,
            b: PI / 2.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            InitialCondition::Sine { j } if *j == 0 => Err(Error::InvalidInitialCondition(
                "sine index must be at least 1".into(),
            )),
            InitialCondition::Characteristic { a, b } if !(0.0 <= *a && a < b && *b <= PI) => {
                Err(Error::InvalidInitialCondition(format!(
                    "characteristic interval [{a}, {b}] must satisfy 0 <= a < b <= pi"
                )))
            }
            InitialCondition::Samples { values } if values.is_empty() => Err(
                Error::InvalidInitialCondition("sample vector is empty".into()),
            ),
            _ => Ok(()),
        }
    }

    /// Parses `sine:J` or `char:a,b`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidInitialCondition(format!("cannot parse '{spec}'"));
        let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
        match kind.trim() {
            "sine" | "sin" => Self::sine(rest.trim().parse().map_err(|_| bad())?),
            "char" | "characteristic" => {
                let (a, b) = rest.split_once(',').ok_or_else(bad)?;
                let a = a.trim().parse().map_err(|_| bad())?;
                let b = b.trim().parse().map_err(|_| bad())?;
                Self::characteristic(a, b)
            }
            _ => Err(bad()),
        }
    }

    /// Pointwise value. Samples are represented by their discrete sine
    /// interpolant.
    pub fn eval(&self, z: f64) -> f64 {
        match self {
            InitialCondition::Sine { j } => (*j as f64 * z).sin(),
            InitialCondition::Characteristic { a, b } => {
                let tol = 1e-12;
                if z >= a - tol && z <= b + tol {
                    1.0
                } else {
                    0.0
                }
            }
            InitialCondition::Samples { values } => {
                let coeffs = dst_coeffs(values);
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * ((k + 1) as f64 * z).sin())
                    .sum()
            }
        }
    }

    /// Values at `z_i = iπ/(N+1)`, `i = 1..=N`.
    pub fn sample(&self, n: usize) -> Vec<f64> {
        let h = PI / (n + 1) as f64;
        (1..=n).map(|i| self.eval(i as f64 * h)).collect()
    }

    /// Points where the function may be discontinuous.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            InitialCondition::Characteristic { a, b } => vec![*a, *b],
            _ => Vec::new(),
        }
    }

    /// Number of sine terms that represent the function exactly, if finite.
    pub fn exact_sine_terms(&self) -> Option<usize> {
        match self {
            InitialCondition::Sine { j } => Some(*j),
            InitialCondition::Samples { values } => Some(values.len()),
            InitialCondition::Characteristic { .. } => None,
        }
    }
}

/// Discrete sine transform of interior samples:
/// `b_k = (2/(N+1)) Σ_i f_i sin(k z_i)`, `k = 1..=N`.
pub fn dst_coeffs(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let period = 2 * (n + 1);
    let table: Vec<f64> = (0..period)
        .map(|t| (PI * t as f64 / (n + 1) as f64).sin())
        .collect();
    let scale = 2.0 / (n + 1) as f64;
    (1..=n)
        .map(|k| {
            let mut s = 0.0;
            let mut idx = 0;
            for &f in values {
                idx += k;
                if idx >= period {
                    idx -= period;
                }
                s += f * table[idx];
            }
            s * scale
        })
        .collect()
}

/// `b_k = (2/π)⟨f, sin(k·)⟩` for `k = 1..=m`.
pub fn sine_coeffs(f: &InitialCondition, m: usize) -> Vec<f64> {
    match f {
        InitialCondition::Sine { j } => (1..=m).map(|k| if k == *j { 1.0 } else { 0.0 }).collect(),
        InitialCondition::Characteristic { a, b } => (1..=m)
            .map(|k| {
                let k = k as f64;
                2.0 / (PI * k) * ((k * a).cos() - (k * b).cos())
            })
            .collect(),
        InitialCondition::Samples { values } => {
            let mut c = dst_coeffs(values);
            c.resize(m, 0.0);
            c
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_coefficients() {
        assert_eq!(
            sine_coeffs(&InitialCondition::Sine { j: 2 }, 4),
            vec![0.0, 1.0, 0.0, 0.0]
        );
        let c = sine_coeffs(&InitialCondition::Characteristic { a: PI / 4.0, b: PI / 2.0 }, 1);
        assert!((c[0] - 2f64.sqrt() / PI).abs() < 1e-15);
    }

    #[test]
    fn samples_of_a_sine() {
        let f = InitialCondition::Samples {
            values: InitialCondition::Sine { j: 3 }.sample(255),
        };
        let c = sine_coeffs(&f, 5);
        for (k, v) in c.iter().enumerate() {
            let want = if k == 2 { 1.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(InitialCondition::parse("sine:2").unwrap(), InitialCondition::Sine { j: 2 });
        assert!(matches!(
            InitialCondition::parse("char:0.5,1.0").unwrap(),
            InitialCondition::Characteristic { .. }
        ));
        assert!(InitialCondition::parse("char:2,1").is_err());
        assert!(InitialCondition::parse("gauss:1").is_err());
        assert!(InitialCondition::parse("sine:0").is_err());
    }

    #[test]
    fn characteristic_includes_endpoints() {
        let f = InitialCondition::default_characteristic();
        assert_eq!(f.eval(PI / 4.0), 1.0);
        assert_eq!(f.eval(PI / 2.0), 1.0);
        assert_eq!(f.eval(0.1), 0.0);
    }
}
