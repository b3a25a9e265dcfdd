//! Human-readable tables and CSV for the CLI reports. Both forms of a report
//! are rendered from the same rows, so they always carry identical numbers.

use std::fmt::Write as _;

use crate::classifier::{EvalReport, Table2};
use crate::corpus::CorpusStats;
use crate::simulate::SimulationReport;

/// Column order of the evaluation CSV.
pub const TABLE2_CSV_HEADER: &str = "row,model,accuracy,precision,recall,f1,roc_auc,tp,fp,tn,fn";
/// Column order of the statistics CSV.
pub const STATS_CSV_HEADER: &str = "measure,class,value";
/// Column order of the blocking-simulation CSV.
pub const SIMULATION_CSV_HEADER: &str = "method,accuracy,precision,recall,f1,tp,fp,tn,fn";

fn num(x: f64) -> String {
    format!("{x:.4}")
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".to_string(), num)
}

fn table2_rows(t: &Table2) -> Vec<(String, String, &EvalReport)> {
    let mut out = Vec::new();
    for r in &t.rows {
        for (m, rep) in t.models.iter().zip(&r.reports) {
            out.push((r.group.name().to_string(), m.name().to_string(), rep));
        }
    }
    out.push(("Downworthy".to_string(), "rules".to_string(), &t.downworthy));
    out
}

pub fn table2_csv(t: &Table2) -> String {
    let mut s = format!("{TABLE2_CSV_HEADER}\n");
    for (row, model, r) in table2_rows(t) {
        let c = r.confusion;
        let _ = writeln!(
            s,
            "{row},{model},{},{},{},{},{},{},{},{},{}",
            num(r.accuracy),
            num(r.precision),
            num(r.recall),
            num(r.f1),
            num(r.roc_auc),
            c.tp,
            c.fp,
            c.tn,
            c.fn_
        );
    }
    s
}

pub fn table2_table(t: &Table2) -> String {
    let mut s = format!(
        "{}-fold cross validation on {} headlines ({:.1}s)\n\n",
        t.k, t.n, t.elapsed_secs
    );
    let _ = writeln!(
        s,
        "{:<20} {:<7} {:>8} {:>9} {:>8} {:>8} {:>8}",
        "Features", "Model", "Acc", "Prec", "Rec", "F1", "ROC-AUC"
    );
    for (row, model, r) in table2_rows(t) {
        let _ = writeln!(
            s,
            "{:<20} {:<7} {:>8} {:>9} {:>8} {:>8} {:>8}",
            row,
            model,
            num(r.accuracy),
            num(r.precision),
            num(r.recall),
            num(r.f1),
            num(r.roc_auc)
        );
    }
    s
}

pub fn stats_csv(st: &CorpusStats) -> String {
    let mut s = format!("{STATS_CSV_HEADER}\n");
    for (name, cb, news) in st.rows() {
        let _ = writeln!(s, "{name},clickbait,{}", opt(cb));
        let _ = writeln!(s, "{name},news,{}", opt(news));
    }
    for (class, c) in [("clickbait", &st.clickbait), ("news", &st.non_clickbait)] {
        if let Some(c) = c {
            for (subj, frac) in &c.top_subjects {
                let _ = writeln!(s, "subject[{subj}],{class},{}", num(*frac));
            }
        }
    }
    s
}

pub fn stats_table(st: &CorpusStats) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<36} {:>10} {:>10}", "measure", "clickbait", "news");
    for (name, cb, news) in st.rows() {
        let _ = writeln!(s, "{:<36} {:>10} {:>10}", name, opt(cb), opt(news));
    }
    for (class, c) in [("clickbait", &st.clickbait), ("news", &st.non_clickbait)] {
        match c {
            Some(c) => {
                let subj: Vec<String> = c
                    .top_subjects
                    .iter()
                    .map(|(w, f)| format!("{w} {}", num(*f)))
                    .collect();
                let _ = writeln!(s, "top subjects ({class}): {}", subj.join(", "));
            }
            None => {
                let _ = writeln!(s, "top subjects ({class}): n/a");
            }
        }
    }
    s.push('\n');
    for (what, ok) in st.directions() {
        let verdict = match ok {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "n/a",
        };
        let _ = writeln!(s, "{verdict:<4} {what}");
    }
    s
}

pub fn simulation_csv(r: &SimulationReport) -> String {
    let mut s = format!("{SIMULATION_CSV_HEADER}\n");
    for m in &r.rows {
        let c = m.confusion;
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            m.method,
            num(m.accuracy),
            num(m.precision),
            num(m.recall),
            num(m.f1),
            c.tp,
            c.fp,
            c.tn,
            c.fn_
        );
    }
    s
}

pub fn simulation_table(r: &SimulationReport) -> String {
    let mut s = format!(
        "{} users, {} replayed events, {} held out (holdout {:.2})\n\n",
        r.users, r.train_events, r.test_events, r.holdout
    );
    let _ = writeln!(
        s,
        "{:<8} {:>8} {:>9} {:>8} {:>8}",
        "Method", "Acc", "Prec", "Rec", "F1"
    );
    for m in &r.rows {
        let _ = writeln!(
            s,
            "{:<8} {:>8} {:>9} {:>8} {:>8}",
            m.method,
            num(m.accuracy),
            num(m.precision),
            num(m.recall),
            num(m.f1)
        );
    }
    s
}
