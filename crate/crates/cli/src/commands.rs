use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use tenzan_core::derivation::{check_script, parse_script};
use tenzan_core::notation::{
    format_traditional_length, parse_decimal, parse_expr, parse_traditional_length, render_modern, render_sidewriting,
    render_triptych, GlyphMode,
};
use tenzan_core::{evaluate, Bindings, Label, SurdNumber};

use crate::corpus;
use crate::identities::{check_all, Agreement};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON object per line.
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Style {
    Modern,
    Sidewriting,
    /// Side-writing, transcription and modern notation side by side.
    All,
}

#[derive(Debug, Parser)]
#[command(name = "tenzan", version, about = "Check and render tenzan jutsu derivations")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Restrict all output to ASCII.
    #[arg(long, global = true)]
    pub ascii: bool,
    /// Significant digits for decimal values.
    #[arg(long, global = true, default_value_t = 9, value_parser = clap::value_parser!(u16).range(1..=100))]
    pub precision: u16,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a derivation script (a file path or corpus:<name>).
    Check { script: String },
    /// Evaluate the conversion identities exactly.
    Identities,
    /// Render an expression given inline or in a file.
    Render {
        #[arg(allow_hyphen_values = true)]
        input: String,
        #[arg(long, value_enum, default_value_t = Style::Modern)]
        style: Style,
    },
    /// Evaluate an expression: eval "<expr>" a=1 b=sqrt(2).
    Eval {
        /// Evaluate the tablet's technique sentence in both sign readings
        /// instead of an expression.
        #[arg(long)]
        technique: bool,
        #[arg(value_name = "EXPR | LABEL=VALUE", allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Convert between a traditional length and a decimal number of sun.
    Units {
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Write the bundled scripts to a directory.
    ExportCorpus { dir: PathBuf },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn input_error(message: impl std::fmt::Display) -> Outcome {
        Outcome {
            stderr: format!("error: {message}\n"),
            code: EXIT_INPUT,
            ..Default::default()
        }
    }

    fn failure(message: impl std::fmt::Display) -> Outcome {
        Outcome {
            stderr: format!("error: {message}\n"),
            code: EXIT_FAIL,
            ..Default::default()
        }
    }

    fn text(stdout: String) -> Outcome {
        Outcome {
            stdout,
            ..Default::default()
        }
    }
}

fn json_line(out: &mut String, value: &impl Serialize) {
    out.push_str(&serde_json::to_string(value).expect("records serialise"));
    out.push('\n');
}

/// Escapes anything outside ASCII as `\u{XXXX}`.
pub fn to_ascii(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        if c.is_ascii() {
            out.push(c);
        } else {
            let _ = write!(out, "\\u{{{:04X}}}", c as u32);
        }
    }
    out
}

pub fn run(cli: &Cli) -> Outcome {
    let mut outcome = match &cli.command {
        Command::Check { script } => cmd_check(cli, script),
        Command::Identities => cmd_identities(cli),
        Command::Render { input, style } => cmd_render(cli, input, *style),
        Command::Eval { technique, args } => cmd_eval(cli, *technique, args),
        Command::Units { input } => cmd_units(cli, input),
        Command::ExportCorpus { dir } => cmd_export(dir),
    };
    if cli.ascii {
        outcome.stdout = to_ascii(&outcome.stdout);
        outcome.stderr = to_ascii(&outcome.stderr);
    }
    outcome
}

fn load_script(source: &str) -> Result<String, String> {
    match source.strip_prefix(corpus::PREFIX) {
        Some(name) => corpus::lookup(name).map(str::to_string).ok_or_else(|| {
            let known: Vec<&str> = corpus::names().collect();
            format!("no corpus script '{name}' (known: {})", known.join(", "))
        }),
        None => std::fs::read_to_string(source).map_err(|e| format!("{source}: {e}")),
    }
}

fn cmd_check(cli: &Cli, source: &str) -> Outcome {
    let text = match load_script(source) {
        Ok(t) => t,
        Err(e) => return Outcome::input_error(e),
    };
    let script = match parse_script(&text) {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(format!("{source}:{e}")),
    };
    let report = check_script(&script);
    let precision = cli.precision as usize;
    let stdout = match cli.format {
        Format::Text => report.render_text(!cli.ascii, precision),
        Format::Structured => {
            let mut out = String::new();
            for r in report.records(precision) {
                json_line(&mut out, &r);
            }
            out
        }
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if report.passed() { EXIT_OK } else { EXIT_FAIL },
    }
}

fn cmd_identities(cli: &Cli) -> Outcome {
    let results = check_all();
    let mut out = String::new();
    for r in &results {
        match cli.format {
            Format::Text => {
                let caveat = if r.sign_caveat { " [sign caveat]" } else { "" };
                let _ = writeln!(out, "{} = {}{caveat}", r.claimed, r.product);
                let _ = writeln!(out, "    value {}: {}", r.value, r.agreement.describe());
            }
            Format::Structured => {
                let mut record = serde_json::to_value(r).expect("records serialise");
                record["record"] = json!("identity");
                json_line(&mut out, &record);
            }
        }
    }
    let count = |a| results.iter().filter(|r| r.agreement == a).count();
    let (exact, signed, bad) = (
        count(Agreement::Exact),
        count(Agreement::UpToSign),
        count(Agreement::Disagrees),
    );
    match cli.format {
        Format::Text => {
            let _ = writeln!(
                out,
                "summary: {} entries, {exact} match, {signed} match up to sign, {bad} disagree",
                results.len()
            );
        }
        Format::Structured => json_line(
            &mut out,
            &json!({"record": "summary", "entries": results.len(), "exact": exact, "up_to_sign": signed, "disagrees": bad}),
        ),
    }
    Outcome::text(out)
}

fn cmd_render(cli: &Cli, input: &str, style: Style) -> Outcome {
    let text = if Path::new(input).is_file() {
        match std::fs::read_to_string(input) {
            Ok(t) => t,
            Err(e) => return Outcome::input_error(format!("{input}: {e}")),
        }
    } else {
        input.to_string()
    };
    let e = match parse_expr(text.trim()) {
        Ok(e) => e,
        Err(err) => return Outcome::input_error(err),
    };
    let mode = if cli.ascii { GlyphMode::Ascii } else { GlyphMode::Kanji };
    let mut rendered = match style {
        Style::Modern => render_modern(&e),
        Style::Sidewriting => render_sidewriting(&e, mode),
        Style::All => render_triptych(&e, cli.ascii),
    };
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    match cli.format {
        Format::Text => Outcome::text(rendered),
        Format::Structured => {
            let mut out = String::new();
            let name = format!("{style:?}").to_lowercase();
            json_line(
                &mut out,
                &json!({"record": "render", "style": name, "text": rendered.trim_end()}),
            );
            Outcome::text(out)
        }
    }
}

fn constant(text: &str) -> Result<SurdNumber, String> {
    let e = parse_expr(text).map_err(|e| e.to_string())?;
    evaluate(&e, &Bindings::new()).map_err(|e| e.to_string())
}

fn parse_binding(arg: &str) -> Result<(Label, SurdNumber), String> {
    let (name, value) = arg
        .split_once('=')
        .ok_or_else(|| format!("expected LABEL=VALUE, got '{arg}'"))?;
    let label = Label::lookup(name.trim()).ok_or_else(|| format!("unknown label '{}'", name.trim()))?;
    let value = constant(value.trim()).map_err(|e| format!("value of {name}: {e}"))?;
    Ok((label, value))
}

fn value_line(exact: &SurdNumber, precision: usize) -> String {
    let (exact, decimal) = (exact.to_string(), exact.to_decimal(precision));
    if exact == decimal {
        exact
    } else {
        format!("{exact} = {decimal}")
    }
}

const TECHNIQUE: [(&str, &str); 2] = [
    ("as written", "(sqrt(2) - 2)*a"),
    ("with the answer's sign", "(2 - sqrt(2))*a"),
];

fn cmd_eval(cli: &Cli, technique: bool, args: &[String]) -> Outcome {
    let (exprs, binding_args): (Vec<(String, String)>, &[String]) = if technique {
        (
            TECHNIQUE.iter().map(|(n, e)| (n.to_string(), e.to_string())).collect(),
            args,
        )
    } else {
        match args.split_first() {
            Some((e, rest)) => (vec![(String::new(), e.clone())], rest),
            None => return Outcome::input_error("nothing to evaluate"),
        }
    };
    let mut bindings = Bindings::new();
    for arg in binding_args {
        match parse_binding(arg) {
            Ok((l, v)) => {
                bindings.insert(l, v);
            }
            Err(e) => return Outcome::input_error(e),
        }
    }
    let precision = cli.precision as usize;
    let mut out = String::new();
    for (name, text) in &exprs {
        let e = match parse_expr(text) {
            Ok(e) => e,
            Err(err) => return Outcome::input_error(err),
        };
        let value = match evaluate(&e, &bindings) {
            Ok(v) => v,
            Err(err) => return Outcome::failure(err),
        };
        match cli.format {
            Format::Text if name.is_empty() => {
                let _ = writeln!(out, "{}", value_line(&value, precision));
            }
            Format::Text => {
                let _ = writeln!(out, "{name}: {text} = {}", value_line(&value, precision));
            }
            Format::Structured => json_line(
                &mut out,
                &json!({"record": "value", "reading": name, "expr": text, "exact": value.to_string(), "decimal": value.to_decimal(precision)}),
            ),
        }
    }
    Outcome::text(out)
}

fn cmd_units(cli: &Cli, input: &str) -> Outcome {
    let input = input.trim();
    if input.chars().any(|c| "寸分厘毛".contains(c)) {
        let length = match parse_traditional_length(input) {
            Ok(l) => l,
            Err(e) => return Outcome::input_error(e),
        };
        return match cli.format {
            Format::Text => Outcome::text(format!("{} sun\n", length.decimal())),
            Format::Structured => {
                let mut out = String::new();
                json_line(
                    &mut out,
                    &json!({"record": "length", "kanji": length.to_string(), "romanized": length.romanized(), "sun": length.decimal()}),
                );
                Outcome::text(out)
            }
        };
    }
    let value = match parse_decimal(input) {
        Some(q) => SurdNumber::from_rational(q),
        None => match constant(input) {
            Ok(v) => v,
            Err(_) => return Outcome::input_error(format!("malformed length '{input}'")),
        },
    };
    let length = match format_traditional_length(&value) {
        Ok(l) => l,
        Err(e) => return Outcome::input_error(e),
    };
    match cli.format {
        Format::Text if cli.ascii => Outcome::text(format!("{}\n", length.romanized())),
        Format::Text => Outcome::text(format!("{length}\n")),
        Format::Structured => {
            let mut out = String::new();
            json_line(
                &mut out,
                &json!({"record": "length", "kanji": length.to_string(), "romanized": length.romanized(), "sun": length.decimal()}),
            );
            Outcome::text(out)
        }
    }
}

fn cmd_export(dir: &Path) -> Outcome {
    if let Err(e) = std::fs::create_dir_all(dir) {
        return Outcome::input_error(format!("{}: {e}", dir.display()));
    }
    let mut out = String::new();
    for (name, text) in corpus::CORPUS {
        let path = dir.join(format!("{name}.tzn"));
        if let Err(e) = std::fs::write(&path, text) {
            return Outcome::input_error(format!("{}: {e}", path.display()));
        }
        let _ = writeln!(out, "{}", path.display());
    }
    Outcome::text(out)
}
