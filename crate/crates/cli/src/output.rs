//! Rendering of command results in text, JSON and CSV.

use serde::Serialize;
use serde_json::{Map, Value};

use hyperentropy::enumerate::{ExtremalReport, VerdictStatus};
use hyperentropy::families::FamilyTag;

pub const SCHEMA_VERSION: &str = "1";

/// Decimal places for every printed real.
pub const DECIMALS: usize = 12;

pub fn fixed(x: f64) -> String {
    format!("{x:.DECIMALS$}")
}

fn fixed_opt(x: Option<f64>) -> String {
    x.map(fixed).unwrap_or_default()
}

/// Rounds every non-integral JSON number to [`DECIMALS`] places.
pub fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            if let Some(r) = fixed(x).parse::<f64>().ok().and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(fields) => fields.values_mut().for_each(round_numbers),
        _ => {}
    }
}

/// One summary line of an extremal report; column order is fixed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub class: String,
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub labeled_count: u64,
    #[serde(rename = "min_I")]
    pub min_i: String,
    #[serde(rename = "max_I")]
    pub max_i: String,
    pub min_h: String,
    pub max_h: String,
    pub bound_lower: String,
    pub bound_upper: String,
    pub verdict: String,
    pub extremizer_tags: String,
}

pub const REPORT_COLUMNS: [&str; 13] = [
    "class",
    "k",
    "m",
    "n",
    "labeled_count",
    "min_I",
    "max_I",
    "min_h",
    "max_h",
    "bound_lower",
    "bound_upper",
    "verdict",
    "extremizer_tags",
];

fn tag_union<'a>(tags: impl Iterator<Item = &'a Vec<FamilyTag>>) -> String {
    let mut all: Vec<FamilyTag> = Vec::new();
    let mut unlabeled = false;
    for t in tags {
        unlabeled |= t.is_empty();
        for &tag in t {
            if !all.contains(&tag) {
                all.push(tag);
            }
        }
    }
    all.sort_by_key(|t| FamilyTag::LABELED.iter().position(|x| x == t));
    let mut names: Vec<&str> = all.iter().map(|t| t.name()).collect();
    if unlabeled {
        names.push("None");
    }
    names.join("/")
}

impl ReportRow {
    pub fn from_report(r: &ExtremalReport) -> Self {
        let verdict = match r.verdict.status {
            VerdictStatus::Pass => "pass",
            VerdictStatus::Fail => "fail",
            VerdictStatus::Empty => "empty",
        };
        let extremizer_tags = if r.labeled_count == 0 {
            String::new()
        } else {
            format!(
                "min_I:{};max_I:{}",
                tag_union(r.minimizers.iter().map(|e| &e.tags)),
                tag_union(r.maximizers.iter().map(|e| &e.tags))
            )
        };
        ReportRow {
            class: r.class.to_string(),
            k: r.k,
            m: r.m,
            n: r.n,
            labeled_count: r.labeled_count,
            min_i: fixed_opt(r.min_i),
            max_i: fixed_opt(r.max_i),
            min_h: fixed_opt(r.min_h),
            max_h: fixed_opt(r.max_h),
            bound_lower: fixed(r.bounds.lower),
            bound_upper: fixed(r.bounds.upper),
            verdict: verdict.into(),
            extremizer_tags,
        }
    }

    pub fn fields(&self) -> Vec<(&'static str, String)> {
        let values = [
            self.class.clone(),
            self.k.to_string(),
            self.m.to_string(),
            self.n.to_string(),
            self.labeled_count.to_string(),
            self.min_i.clone(),
            self.max_i.clone(),
            self.min_h.clone(),
            self.max_h.clone(),
            self.bound_lower.clone(),
            self.bound_upper.clone(),
            self.verdict.clone(),
            self.extremizer_tags.clone(),
        ];
        REPORT_COLUMNS.into_iter().zip(values).collect()
    }
}

/// What a command produced, before choosing a format.
#[derive(Debug, Default)]
pub struct Response {
    pub command: &'static str,
    /// Ordered key/value summary for text and CSV.
    pub pairs: Vec<(String, String)>,
    /// Free-form trailing text lines (text format only).
    pub details: Vec<String>,
    /// JSON body, merged into the top-level object.
    pub json: Map<String, Value>,
    /// Rows for CSV emission; key/value pairs are used when absent.
    pub rows: Option<Vec<ReportRow>>,
    /// Replaces the whole text rendering when set.
    pub raw_text: Option<String>,
    pub exit_code: i32,
}

impl Response {
    pub fn new(command: &'static str) -> Self {
        Response { command, ..Response::default() }
    }

    pub fn pair(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.pairs.push((key.to_string(), value.to_string()));
        self
    }

    pub fn field(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.json.insert(key.to_string(), serde_json::to_value(value).expect("serializable output"));
        self
    }

    pub fn to_text(&self) -> String {
        if let Some(raw) = &self.raw_text {
            return raw.clone();
        }
        let width = self.pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.pairs {
            out += &format!("{k:<width$}  {v}\n");
        }
        for line in &self.details {
            out += line;
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        top.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        top.insert("command".into(), Value::from(self.command));
        for (k, v) in &self.json {
            top.insert(k.clone(), v.clone());
        }
        let mut value = Value::Object(top);
        round_numbers(&mut value);
        let mut s = serde_json::to_string_pretty(&value).expect("json output");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.rows {
            Some(rows) => {
                w.write_record(REPORT_COLUMNS).expect("in-memory csv");
                for row in rows {
                    w.write_record(row.fields().into_iter().map(|(_, v)| v)).expect("in-memory csv");
                }
            }
            None => {
                w.write_record(["field", "value"]).expect("in-memory csv");
                for (k, v) in &self.pairs {
                    w.write_record([k, v]).expect("in-memory csv");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_decimals() {
        assert_eq!(fixed(2.0f64.log2()), "1.000000000000");
        assert_eq!(fixed(12f64.log2() - 4f64.log2() / 3.0), "2.918295834054");
    }

    #[test]
    fn json_numbers_are_rounded() {
        let mut v = serde_json::json!({"a": 1.0 / 3.0, "b": [2, 0.1 + 0.2]});
        round_numbers(&mut v);
        assert_eq!(v.to_string(), r#"{"a":0.333333333333,"b":[2,0.3]}"#);
    }

    #[test]
    fn csv_of_pairs() {
        let mut r = Response::new("x");
        r.pair("a", 1).pair("b", "x,y");
        assert_eq!(r.to_csv(), "field,value\na,1\nb,\"x,y\"\n");
    }
}
