//! Number formatting and atomic file output.

use std::io::Write;
use std::path::Path;

use relcalc_core::Histogram;
use tempfile::NamedTempFile;

use crate::error::CliError;

/// Positional decimal with 17 significant digits, enough to round-trip any
/// finite `f64`.
pub fn fmt_sig17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0.0000000000000000"
        } else {
            "0.0000000000000000"
        }
        .into();
    }
    let sci = format!("{:.16e}", v.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let sign = if v < 0.0 { "-" } else { "" };
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else if (exp as usize) < digits.len() - 1 {
        let (int, frac) = digits.split_at(exp as usize + 1);
        format!("{int}.{frac}")
    } else {
        format!("{digits}{}", "0".repeat(exp as usize + 1 - digits.len()))
    };
    format!("{sign}{body}")
}

pub fn samples_csv(values: &[f64]) -> String {
    let mut s = String::with_capacity(20 * (values.len() + 1));
    s.push_str("theta_tot_sys\n");
    for v in values {
        s.push_str(&fmt_sig17(*v));
        s.push('\n');
    }
    s
}

pub fn histogram_csv(h: &Histogram) -> String {
    let mut s = String::from("bin_low,bin_high,count,density\n");
    for k in 0..h.n_bins() {
        s.push_str(&format!(
            "{},{},{},{}\n",
            fmt_sig17(h.edges[k]),
            fmt_sig17(h.edges[k + 1]),
            h.counts[k],
            fmt_sig17(h.densities[k])
        ));
    }
    s
}

/// Writes `contents` to `dir/name` through a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    let ctx = || format!("writing {}", path.display());
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(ctx(), e))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| CliError::io(ctx(), e))?;
    tmp.as_file()
        .sync_all()
        .map_err(|e| CliError::io(ctx(), e))?;
    tmp.persist(&path)
        .map_err(|e| CliError::io(ctx(), e.error))?;
    Ok(())
}
