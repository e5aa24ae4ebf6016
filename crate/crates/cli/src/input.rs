use quartica_core::catalog::{self, BitangentTable, CurveSpec};
use quartica_core::combinatorics::WeakCombinatorics;
use quartica_core::serial;
use quartica_core::NumberField;

use crate::report::CliError;
use crate::InputArgs;

pub enum Source {
    Curve {
        spec: CurveSpec,
        /// Set when the input names one of the shipped bitangent tables.
        table: Option<BitangentTable>,
    },
    Combinatorics(WeakCombinatorics),
}

impl Source {
    pub fn from_args(args: &InputArgs) -> Result<Source, CliError> {
        if let Some(name) = &args.builtin {
            let spec = catalog::builtin(name)?;
            return Ok(Source::Curve {
                spec,
                table: catalog::table_by_name(name),
            });
        }
        if let Some(l) = &args.ciani {
            return Ok(Source::Curve {
                spec: catalog::ciani_rational(l)?,
                table: None,
            });
        }
        if let Some(text) = &args.lines {
            return lines_source(text);
        }
        if let Some(path) = &args.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            return from_text(&text).map_err(|e| match e {
                CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
                other => other,
            });
        }
        Err(CliError::Input(
            "no input given; use --builtin, --input, --lines or --ciani".into(),
        ))
    }

    pub fn curve(&self) -> Result<&CurveSpec, CliError> {
        match self {
            Source::Curve { spec, .. } => Ok(spec),
            Source::Combinatorics(_) => Err(CliError::Input("this command needs a curve, not a combinatorics vector".into())),
        }
    }

    pub fn table(&self) -> Option<&BitangentTable> {
        match self {
            Source::Curve { table, .. } => table.as_ref(),
            Source::Combinatorics(_) => None,
        }
    }

    /// Canonical serialization used for the report digest.
    pub fn canonical(&self) -> String {
        match self {
            Source::Curve { spec, .. } => serial::curve_to_string(spec),
            Source::Combinatorics(wc) => serde_json::to_string(wc).expect("serializable"),
        }
    }
}

fn lines_source(text: &str) -> Result<Source, CliError> {
    let q = NumberField::rationals();
    let lines = serial::parse_lines(&q, text)?;
    Ok(Source::Curve {
        spec: CurveSpec {
            label: "lines".into(),
            field: q,
            quartic: None,
            lines,
            extra: None,
        },
        table: None,
    })
}

fn from_text(text: &str) -> Result<Source, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("parse error: {e}")))?;
    if value.is_array() {
        return lines_source(text);
    }
    if value.get("k").is_some() {
        return Ok(Source::Combinatorics(serial::parse_wc(text)?));
    }
    Ok(Source::Curve {
        spec: serial::parse_curve(text)?,
        table: None,
    })
}
