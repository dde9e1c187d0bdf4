//! Deterministic report formatting: JSON with every float rounded to 15
//! significant digits, and the contour sample CSV.

use std::io::Write;

use backlund_core::contour::ArgSample;
use serde::Serialize;
use serde_json::Value;

/// Rounds to 15 significant digits.
pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// 15-significant-digit decimal with a lowercase exponent where one is needed.
pub fn fmt_sig15(x: f64) -> String {
    let r = round_sig15(x);
    let v = Value::from(r);
    match v {
        Value::Number(n) => n.to_string(),
        _ => format!("{r}"),
    }
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                *v = Value::from(round_sig15(x));
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub const CSV_HEADER: [&str; 6] = ["index", "sigma", "t", "re_f", "im_f", "accumulated_arg"];

pub fn write_samples_csv<W: Write>(out: W, samples: &[ArgSample]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for (i, s) in samples.iter().enumerate() {
        w.write_record([
            i.to_string(),
            fmt_sig15(s.point.re),
            fmt_sig15(s.point.im),
            fmt_sig15(s.value.re),
            fmt_sig15(s.value.im),
            fmt_sig15(s.accumulated_arg),
        ])?;
    }
    w.flush()?;
    Ok(())
}
