//! Volume-function export for plotting.
//!
//! Header `x,vol,Q,exact`. The first three columns are decimals rounded to
//! 12 significant digits; `exact` holds the same three values as exact
//! fractions separated by `;` and is the authoritative column.

use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{frac, rat, rat_string, LatticeVec, Rat};
use crate::valuation::{restricted_volume_of, ToricValuation};
use crate::variety::ToricFano;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rows at `samples` evenly spaced points of `[0, τ]`.
pub fn volume_csv(variety: &ToricFano, w: &LatticeVec, samples: usize) -> Result<String> {
    if samples < 2 {
        return Err(Error::Parse(format!("need at least 2 samples, got {samples}")));
    }
    let v = ToricValuation::new(variety, w.clone())?;
    let vol = v.volume_function();
    let q = restricted_volume_of(&vol, variety.dim());
    let tau = vol.end().clone();
    let mut out = String::from("x,vol,Q,exact\n");
    for i in 0..samples {
        let x = &tau * frac(i as i64, samples as i64 - 1);
        let (fv, fq) = (vol.eval(&x), q.eval(&x));
        out.push_str(&format!(
            "{},{},{},{};{};{}\n",
            decimal(&x, SIGNIFICANT_DIGITS),
            decimal(&fv, SIGNIFICANT_DIGITS),
            decimal(&fq, SIGNIFICANT_DIGITS),
            rat_string(&x),
            rat_string(&fv),
            rat_string(&fq),
        ));
    }
    Ok(out)
}

pub fn export_volume_csv(variety: &ToricFano, w: &LatticeVec, samples: usize, path: &Path) -> Result<()> {
    let text = volume_csv(variety, w, samples)?;
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Positional decimal rounded (half away from zero) to `digits`
/// significant digits.
pub fn decimal(r: &Rat, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let a = r.abs();
    // Exponent e with 10^e <= a < 10^(e+1).
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &a * pow10(shift);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut m = q;
    if Rat::new(rem, scaled.denom().clone()) * rat(2) >= rat(1) {
        m += 1;
    }
    if m == BigInt::from(10).pow(digits as u32) {
        m /= 10;
        e += 1;
    }
    let s = m.to_string();
    let body = if e >= 0 {
        let int_len = (e + 1) as usize;
        if int_len >= s.len() {
            format!("{s}{}", "0".repeat(int_len - s.len()))
        } else {
            format!("{}.{}", &s[..int_len], &s[int_len..])
        }
    } else {
        format!("0.{}{s}", "0".repeat((-e - 1) as usize))
    };
    format!("{sign}{body}")
}

fn pow10(e: i64) -> Rat {
    let p = Rat::from_integer(BigInt::from(10).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::corpus;

    #[test]
    fn decimals() {
        assert_eq!(decimal(&rat(6), 12), "6.00000000000");
        assert_eq!(decimal(&frac(16, 3), 12), "5.33333333333");
        assert_eq!(decimal(&frac(10, 3), 12), "3.33333333333");
        assert_eq!(decimal(&frac(2, 3), 12), "0.666666666667");
        assert_eq!(decimal(&frac(-1, 3000), 3), "-0.000333");
        assert_eq!(decimal(&frac(9999, 10), 3), "1000");
        assert_eq!(decimal(&rat(0), 12), "0");
        assert_eq!(decimal(&rat(123456), 3), "123000");
    }

    #[test]
    fn weighted_projective_rows() {
        let x = corpus::p123().to_variety().unwrap();
        let w = LatticeVec::from_i64(&[-1, 0]);
        let text = volume_csv(&x, &w, 4).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,vol,Q,exact");
        assert_eq!(lines.len(), 5);
        let exact: Vec<&str> = lines[1..].iter().map(|l| l.rsplit(',').next().unwrap()).collect();
        assert_eq!(exact, ["0/1;6/1;0/1", "1/1;16/3;2/3", "2/1;10/3;4/3", "3/1;0/1;2/1"]);

        let text = volume_csv(&x, &w, 2).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].ends_with("0/1;6/1;0/1"));
        assert!(lines[2].starts_with("3.00000000000,0,"));

        assert!(volume_csv(&x, &w, 1).is_err());
    }

    #[test]
    fn unwritable_path() {
        let x = corpus::p123().to_variety().unwrap();
        let w = LatticeVec::from_i64(&[-1, 0]);
        let e = export_volume_csv(&x, &w, 3, Path::new("/nonexistent/dir/out.csv")).unwrap_err();
        assert!(matches!(e, Error::Io(_)));
    }
}
