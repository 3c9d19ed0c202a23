//! Text and CSV views of a command result. JSON is the canonical form; these
//! only flatten it.

use serde_json::Value;

fn s(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        Value::Null => String::new(),
        Value::Array(xs) => xs.iter().map(s).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn interval(v: &Value) -> String {
    match v.as_array().map(Vec::as_slice) {
        Some([lo, hi]) => format!("[{}, {}]", s(lo), s(hi)),
        _ => s(v),
    }
}

fn map_pairs(v: &Value) -> String {
    v.as_object()
        .map(|m| {
            m.iter()
                .map(|(k, x)| format!("{k}={}", s(x)))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

/// Rows as (header, records) for the tabular commands.
fn table(command: &str, r: &Value) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let arr = |k: &str| r.get(k).and_then(Value::as_array).cloned().unwrap_or_default();
    match command {
        "tori" => (
            vec!["class", "t_order", "r_order", "n_order", "hat_t_order", "hat_t_factors"],
            arr("classes")
                .iter()
                .map(|c| {
                    ["class", "t_order", "r_order", "n_order", "hat_t_order", "hat_t_factors"]
                        .iter()
                        .map(|k| s(&c[*k]))
                        .collect()
                })
                .collect(),
        ),
        "eta" => (
            vec!["order", "label", "size", "term_lo", "term_hi"],
            arr("classes")
                .iter()
                .map(|c| {
                    vec![
                        s(&c["class"]["order"]),
                        s(&c["label"]),
                        s(&c["class"]["size"]),
                        s(&c["term"][0]),
                        s(&c["term"][1]),
                    ]
                })
                .collect(),
        ),
        "qhat" => (
            vec!["group", "torus", "case", "strategy", "upper_lo", "upper_hi", "verdict"],
            arr("reports")
                .iter()
                .map(|b| {
                    vec![
                        s(&b["group"]),
                        s(&b["torus"]),
                        s(&b["case"]),
                        s(&b["strategy"]),
                        s(&b["value"][0]),
                        s(&b["value"][1]),
                        s(&b["verdict"]),
                    ]
                })
                .collect(),
        ),
        "basesize" => (
            vec!["intersection_order", "orbits"],
            arr("intersections")
                .iter()
                .map(|m| vec![s(&m["order"]), s(&m["orbits"])])
                .collect(),
        ),
        "vdovin" => (
            vec!["group", "torus", "p", "p_group_intersection", "route", "witness_order"],
            vec![
                ["group", "torus", "p", "p_group_intersection", "route", "witness_order"]
                    .iter()
                    .map(|k| s(&r[*k]))
                    .collect(),
            ],
        ),
        _ => (
            vec!["key", "status", "claimed", "computed", "notes"],
            arr("cases")
                .iter()
                .map(|c| {
                    vec![
                        s(&c["key"]),
                        s(&c["status"]),
                        map_pairs(&c["claimed"]),
                        map_pairs(&c["computed"]),
                        s(&c["notes"]),
                    ]
                })
                .collect(),
        ),
    }
}

pub fn csv(command: &str, result: &Value) -> String {
    let (header, rows) = table(command, result);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn text(command: &str, env: &Value) -> String {
    let r = &env["result"];
    let mut out = String::new();
    match command {
        "tori" => {
            out += &format!("{}  |G| = {}\n", s(&r["group"]), s(&r["group_order"]));
        }
        "eta" => {
            out += &format!(
                "eta_{}({}) in {}  ({}; below 1: {})\n",
                s(&r["group"]),
                s(&r["t"]),
                interval(&r["value"]),
                s(&r["path"]),
                r["below_one"]
            );
        }
        "basesize" => {
            let b = if r["b"].is_null() {
                format!("in {}", map_pairs(&r["bracket"]))
            } else {
                s(&r["b"])
            };
            out += &format!(
                "{} on cosets of N({})  |N| = {}  degree {}\nb = {}  base {}\nsubdegrees {}\n",
                s(&r["group"]),
                s(&r["torus"]),
                s(&r["n_order"]),
                s(&r["degree"]),
                b,
                s(&r["base"]),
                s(&r["subdegrees"])
            );
        }
        "vdovin" => {
            out += &format!(
                "{} N({}): N ∩ N^x a {}-group for some x: {} ({})\n",
                s(&r["group"]),
                s(&r["torus"]),
                s(&r["p"]),
                r["p_group_intersection"],
                s(&r["route"])
            );
            return out;
        }
        "qhat" => {
            for b in r["reports"].as_array().into_iter().flatten() {
                out += &format!(
                    "Q^({}{}) <= {}  [{}]  {}\n",
                    s(&b["group"]),
                    b["torus"].as_str().map(|t| format!(", {t}")).unwrap_or_default(),
                    interval(&b["value"]),
                    [s(&b["case"]), s(&b["strategy"])]
                        .iter()
                        .filter(|x| !x.is_empty())
                        .cloned()
                        .collect::<Vec<_>>()
                        .join(" / "),
                    s(&b["verdict"])
                );
            }
            return out;
        }
        _ => {
            let cases = r["cases"].as_array().cloned().unwrap_or_default();
            for c in &cases {
                let tag = match c["status"].as_str() {
                    Some("match") => "ok      ".to_string(),
                    Some("mismatch") => "MISMATCH".to_string(),
                    _ => "skipped ".to_string(),
                };
                out += &format!("{tag} {}  {}\n", s(&c["key"]), map_pairs(&c["computed"]));
                if c["status"] != "match" {
                    out += &format!("         claimed {}\n", map_pairs(&c["claimed"]));
                    for n in c["notes"].as_array().into_iter().flatten() {
                        out += &format!("         {}\n", s(n));
                    }
                    if let Some(sk) = c["status"].get("skipped") {
                        out += &format!("         {}\n", s(sk));
                    }
                }
            }
            let bad = cases.iter().filter(|c| c["status"] == "mismatch").count();
            out += &format!("{} cases, {} mismatches\n", cases.len(), bad);
            return out;
        }
    }
    let (header, rows) = table(command, r);
    out += &header.join("\t");
    out.push('\n');
    for row in rows {
        out += &row.join("\t");
        out.push('\n');
    }
    out
}
