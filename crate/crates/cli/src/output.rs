use entlab::experiments::{EntanglementReport, InversionWitness};
use entlab::io::StateRecord;
use serde_json::{json, Value};

pub const SCHEMA: &str = "entlab/1";
pub const CSV_HEADER: [&str; 6] = ["family", "param", "e_in", "e_out", "measure", "channel"];

/// 17 significant digits, enough to round-trip any f64.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn rows_to_csv(rows: &[EntanglementReport]) -> Result<Vec<u8>, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.family.name().to_string(),
            float(r.family_param),
            float(r.e_in),
            float(r.e_out),
            r.measure.name().to_string(),
            r.channel.clone(),
        ])?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

pub fn witness_json(w: &InversionWitness) -> Value {
    json!({
        "label_1": w.label_1,
        "label_2": w.label_2,
        "e_in_1": w.e_in_1,
        "e_in_2": w.e_in_2,
        "e_out_1": w.e_out_1,
        "e_out_2": w.e_out_2,
        "margin_in": w.margin_in,
        "margin_out": w.margin_out,
        "state_1": StateRecord::from(&w.state_1),
        "state_2": StateRecord::from(&w.state_2),
    })
}

/// Adds `schema`, `command` and `seed` to a report object.
pub fn envelope(command: &str, seed: Option<u64>, mut body: Value) -> Value {
    if let Value::Object(map) = &mut body {
        map.insert("schema".into(), SCHEMA.into());
        map.insert("command".into(), command.into());
        if let Some(seed) = seed {
            map.insert("seed".into(), seed.into());
        }
    }
    body
}

pub fn to_json_bytes(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("reports always serialize");
    out.push(b'\n');
    out
}
