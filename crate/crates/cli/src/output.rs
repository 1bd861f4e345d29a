//! Fixed-precision number formatting shared by the JSON and CSV writers.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::value::RawValue;

/// 17 significant digits; non-finite values as `inf`, `-inf` or `nan`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// A JSON number with 17 significant digits, or `null` when not finite.
#[derive(Debug)]
pub struct Num(Box<RawValue>);

impl Num {
    pub fn new(x: f64) -> Self {
        let text = if x.is_finite() { fmt_f64(x) } else { "null".into() };
        Num(RawValue::from_string(text).expect("formatted number is valid JSON"))
    }
}

impl Serialize for Num {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[derive(Debug, Serialize)]
pub struct Cplx {
    pub re: Num,
    pub im: Num,
}

impl From<Complex64> for Cplx {
    fn from(z: Complex64) -> Self {
        Cplx { re: Num::new(z.re), im: Num::new(z.im) }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
