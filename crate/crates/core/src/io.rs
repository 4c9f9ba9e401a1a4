//! File formats.
//!
//! * Barcode JSON: `{"dim": <int|null>, "intervals": [[birth, death], ...]}`
//!   with `death` a number or the string `"inf"`. A file holds one object or
//!   an array of objects.
//! * Point-cloud CSV: one point per line, comma-separated decimals. A first
//!   line that does not parse as numbers is treated as a header.
//! * Step-function CSV: rows `t_start,t_end,value` with 17 significant digits.

use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::barcode::{Barcode, Interval};
use crate::error::{Error, Result};
use crate::rips::PointCloud;
use crate::summary::StepFunction;

const INF_LITERAL: &str = "inf";

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(2)?;
        tup.serialize_element(&self.birth())?;
        if self.is_finite() {
            tup.serialize_element(&self.death())?;
        } else {
            tup.serialize_element(INF_LITERAL)?;
        }
        tup.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Endpoint {
    Number(f64),
    Literal(String),
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PairVisitor;

        impl<'de> Visitor<'de> for PairVisitor {
            type Value = Interval;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a [birth, death] pair with death a number or \"inf\"")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Interval, A::Error> {
                let birth: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let death: Endpoint = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                let death = match death {
                    Endpoint::Number(d) => d,
                    Endpoint::Literal(s) if s == INF_LITERAL => f64::INFINITY,
                    Endpoint::Literal(s) => {
                        return Err(de::Error::invalid_value(de::Unexpected::Str(&s), &self))
                    }
                };
                Interval::new(birth, death).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_seq(PairVisitor)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BarcodeFile {
    Many(Vec<Barcode>),
    One(Barcode),
}

/// Parses a barcode JSON document holding one object or an array of them.
pub fn parse_barcodes(text: &str) -> Result<Vec<Barcode>> {
    let file: BarcodeFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("barcode JSON: {e}")))?;
    Ok(match file {
        BarcodeFile::Many(v) => v,
        BarcodeFile::One(b) => vec![b],
    })
}

pub fn barcode_to_json(barcode: &Barcode) -> String {
    serde_json::to_string(barcode).expect("barcode serialization is infallible")
}

/// A JSON array with one barcode per line.
pub fn barcodes_to_json(barcodes: &[Barcode]) -> String {
    if barcodes.is_empty() {
        return "[]".into();
    }
    let lines: Vec<String> = barcodes.iter().map(|b| format!("  {}", barcode_to_json(b))).collect();
    format!("[\n{}\n]", lines.join(",\n"))
}

/// Parses a point-cloud CSV. Errors name the 1-based offending line.
pub fn parse_point_cloud(text: &str) -> Result<PointCloud> {
    let mut points = Vec::new();
    let mut first_content_line = true;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> =
            line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        match parsed {
            Ok(p) => {
                if p.iter().any(|x| !x.is_finite()) {
                    return Err(Error::Parse(format!("line {lineno}: non-finite coordinate")));
                }
                points.push(p);
            }
            Err(_) if first_content_line => {}
            Err(e) => return Err(Error::Parse(format!("line {lineno}: {e}"))),
        }
        first_content_line = false;
    }
    if points.is_empty() {
        let lines = text.lines().count().max(1);
        return Err(Error::Parse(format!("line {lines}: no points found")));
    }
    PointCloud::new(points)
}

pub fn point_cloud_to_csv(cloud: &PointCloud) -> String {
    let mut out = String::new();
    for p in cloud.points() {
        let row: Vec<String> = p.iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Writes `t_start,t_end,value` rows with 17 significant digits.
pub fn step_function_to_csv(f: &StepFunction) -> String {
    let mut out = String::from("t_start,t_end,value\n");
    for (start, end, value) in f.segments() {
        out.push_str(&format!("{start:.16e},{end:.16e},{value:.16e}\n"));
    }
    out
}

/// Formats `x` with `digits` significant digits, trailing zeros trimmed.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits.saturating_sub(1), x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let negative = mantissa.starts_with('-');
    let digits_str: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let mut s = if exp >= 0 {
        let int_len = exp as usize + 1;
        if digits_str.len() <= int_len {
            format!("{}{}", digits_str, "0".repeat(int_len - digits_str.len()))
        } else {
            format!("{}.{}", &digits_str[..int_len], &digits_str[int_len..])
        }
    } else {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits_str)
    };
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if negative {
        s.insert(0, '-');
    }
    s
}
