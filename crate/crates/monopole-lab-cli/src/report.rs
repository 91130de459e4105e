//! Deterministic report plumbing shared by every subcommand.
//!
//! Reports are the product of this binary, so they are built to be
//! diffed.  Three rules make two runs with the same flags and seed
//! byte-identical:
//!
//! * every floating-point number is rendered with 17 significant digits
//!   in scientific notation — one mantissa digit before the point,
//!   sixteen after, an explicit exponent — which is exactly enough to
//!   round-trip an IEEE double and never more;
//! * object keys keep insertion order (no hash maps anywhere in the
//!   emission path);
//! * report assembly is single-threaded: parallel workers only fill
//!   index-ordered buffers, reductions happen sequentially afterwards.
//!
//! Two artifact shapes exist.  **JSON Lines**: one self-contained JSON
//! object per line, the first always a header record echoing the parsed
//! configuration, the crate version and the name of the random
//! generator, so the artifact can be interpreted without the command
//! line that produced it.  **CSV**: a `#`-prefixed comment line carrying
//! the same header data, one row of column names, then data rows; when a
//! verification command is forced into CSV, its verdicts are appended as
//! `# check …` comment lines so the exit status stays a pure function of
//! the artifact.

use std::path::PathBuf;

/// Tool name stamped into every header record.
pub const TOOL: &str = "monopole-lab";

/// The one random generator used anywhere in this binary, named in every
/// header: a ChaCha stream cipher with 8 rounds, seeded through
/// `SeedableRng::seed_from_u64` with the `--seed` flag.  Draw order is
/// fixed (all random numbers are drawn sequentially before any parallel
/// evaluation), so a fixed seed pins every randomized sweep bit for bit.
pub const RNG_NAME: &str = "ChaCha8Rng (rand_chacha, seed_from_u64)";

/// Crate version stamped into every header record.
pub fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// 17-significant-digit rendering of a double.  Finite values only; a
/// non-finite value is a bug upstream and is surfaced as `null` rather
/// than as syntax no JSON parser would accept.
pub fn sig17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// One JSON value in the ordered-object tree.
#[derive(Clone)]
pub enum Jv {
    Str(String),
    Num(f64),
    Int(i64),
    UInt(u64),
    Bool(bool),
    Null,
    NumArr(Vec<f64>),
    Obj(JsonObj),
}

/// An insertion-ordered JSON object builder; keys are compile-time
/// literals because every record layout is fixed in code.
#[derive(Clone, Default)]
pub struct JsonObj {
    fields: Vec<(&'static str, Jv)>,
}

impl JsonObj {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn s(mut self, k: &'static str, v: impl Into<String>) -> Self {
        self.fields.push((k, Jv::Str(v.into())));
        self
    }

    pub fn n(mut self, k: &'static str, v: f64) -> Self {
        self.fields.push((k, Jv::Num(v)));
        self
    }

    pub fn i(mut self, k: &'static str, v: i64) -> Self {
        self.fields.push((k, Jv::Int(v)));
        self
    }

    pub fn u(mut self, k: &'static str, v: u64) -> Self {
        self.fields.push((k, Jv::UInt(v)));
        self
    }

    pub fn b(mut self, k: &'static str, v: bool) -> Self {
        self.fields.push((k, Jv::Bool(v)));
        self
    }

    pub fn null(mut self, k: &'static str) -> Self {
        self.fields.push((k, Jv::Null));
        self
    }

    pub fn num_array(mut self, k: &'static str, v: &[f64]) -> Self {
        self.fields.push((k, Jv::NumArr(v.to_vec())));
        self
    }

    pub fn obj(mut self, k: &'static str, v: JsonObj) -> Self {
        self.fields.push((k, Jv::Obj(v)));
        self
    }

    pub fn opt_n(self, k: &'static str, v: Option<f64>) -> Self {
        match v {
            Some(x) => self.n(k, x),
            None => self.null(k),
        }
    }

    pub fn opt_s(self, k: &'static str, v: Option<&str>) -> Self {
        match v {
            Some(x) => self.s(k, x),
            None => self.null(k),
        }
    }

    pub fn opt_u(self, k: &'static str, v: Option<u64>) -> Self {
        match v {
            Some(x) => self.u(k, x),
            None => self.null(k),
        }
    }

    /// Appends all fields of `other` (used to splice per-command detail
    /// into the canonical check-record layout).
    pub fn merge(mut self, other: JsonObj) -> Self {
        self.fields.extend(other.fields);
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        out.push('{');
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write_json_str(k, out);
            out.push(':');
            write_jv(v, out);
        }
        out.push('}');
    }
}

fn write_jv(v: &Jv, out: &mut String) {
    match v {
        Jv::Str(s) => write_json_str(s, out),
        Jv::Num(x) => out.push_str(&sig17(*x)),
        Jv::Int(n) => out.push_str(&n.to_string()),
        Jv::UInt(n) => out.push_str(&n.to_string()),
        Jv::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Jv::Null => out.push_str("null"),
        Jv::NumArr(xs) => {
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&sig17(*x));
            }
            out.push(']');
        }
        Jv::Obj(o) => o.write(out),
    }
}

fn write_json_str(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04x}", c as u32));
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// One verdict of a verification run.  The binary exits 0 iff every
/// check of the emitted report passes, so the exit status is a pure
/// function of the report contents.
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// One human-readable line, printed to stderr when the check fails.
    pub diagnostic: String,
}

/// Everything a subcommand produces: the report lines (already formatted
/// for the chosen artifact shape), the check verdicts deciding the exit
/// status, and the destination.
#[derive(Default)]
pub struct CommandOutput {
    pub lines: Vec<String>,
    pub checks: Vec<Check>,
    pub output_path: Option<PathBuf>,
}

impl CommandOutput {
    pub fn new(output_path: Option<PathBuf>) -> Self {
        CommandOutput {
            lines: Vec::new(),
            checks: Vec::new(),
            output_path,
        }
    }

    pub fn line(&mut self, s: String) {
        self.lines.push(s);
    }

    /// Registers a verdict without emitting a record (the caller already
    /// emitted whatever representation fits its format).
    pub fn verdict(&mut self, name: &str, pass: bool, diagnostic: String) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            diagnostic,
        });
    }

    /// The canonical defect check: pass ⟺ observed ≤ tolerance.  In JSON
    /// mode emits `{"record":"check","name":…,⟨detail⟩,"observed":…,
    /// "tolerance":…,"pass":…}`; in CSV mode the caller is expected to
    /// finish with [`CommandOutput::csv_check_trailer`].
    pub fn defect_check(
        &mut self,
        json: bool,
        name: &str,
        detail: JsonObj,
        observed: f64,
        tolerance: f64,
    ) {
        let pass = observed <= tolerance;
        if json {
            let rec = JsonObj::new()
                .s("record", "check")
                .s("name", name)
                .merge(detail)
                .n("observed", observed)
                .n("tolerance", tolerance)
                .b("pass", pass);
            self.lines.push(rec.render());
        }
        self.verdict(
            name,
            pass,
            format!(
                "{name}: observed {} vs tolerance {}",
                sig17(observed),
                sig17(tolerance)
            ),
        );
    }

    /// Appends the closing summary: a JSON record or a `#` comment line.
    pub fn summary(&mut self, json: bool) {
        let total = self.checks.len() as u64;
        let failed = self.checks.iter().filter(|c| !c.pass).count() as u64;
        let pass = failed == 0;
        if json {
            let rec = JsonObj::new()
                .s("record", "summary")
                .u("checks", total)
                .u("failed", failed)
                .b("pass", pass);
            self.lines.push(rec.render());
        } else {
            self.lines
                .push(format!("# summary checks={total} failed={failed} pass={pass}"));
        }
    }

    /// CSV representation of the verdicts: one `# check …` comment line
    /// each, so a CSV verification artifact still determines the exit
    /// status by itself.
    pub fn csv_check_trailer(&mut self) {
        let mut lines = Vec::new();
        for c in &self.checks {
            lines.push(format!(
                "# check {} pass={} ({})",
                c.name, c.pass, c.diagnostic
            ));
        }
        self.lines.extend(lines);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }
}
