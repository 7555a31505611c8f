/// Absent values in CSV and report output.
pub const NA: &str = "NA";

/// C's `%.12e`: twelve digits after the point and a signed exponent of at
/// least two digits (`1.000000000000e+00`).
pub fn sci(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_owned()
        } else if x > 0.0 {
            "inf".to_owned()
        } else {
            "-inf".to_owned()
        };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exponent) = s.split_once('e').expect("exponent marker");
    let (sign, digits) = match exponent.strip_prefix('-') {
        Some(d) => ('-', d),
        None => ('+', exponent),
    };
    format!("{mantissa}e{sign}{digits:0>2}")
}

pub fn sci_or_na(x: Option<f64>) -> String {
    x.map(sci).unwrap_or_else(|| NA.to_owned())
}
