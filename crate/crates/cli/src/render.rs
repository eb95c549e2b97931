use serde::Serialize;
use spectra_core::Spectrum;

pub fn json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports serialize");
    out.push('\n');
    out
}

pub fn spectrum_csv(s: &Spectrum) -> String {
    let mut out = String::from("value,frequency\n");
    for (v, f) in s.entries() {
        out.push_str(&format!("{v},{f}\n"));
    }
    out
}

pub fn spectrum_table(header: &[String], s: &Spectrum) -> String {
    let mut out = String::new();
    for line in header {
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&format!("{} spectrum\n", s.kind()));
    let width = s.entries().keys().map(|v| v.to_string().len()).max().unwrap_or(1).max("value".len());
    out.push_str(&format!("{:>width$}  frequency\n", "value"));
    for (v, f) in s.entries() {
        out.push_str(&format!("{v:>width$}  {f}\n"));
    }
    out
}
