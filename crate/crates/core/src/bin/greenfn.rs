//! Command-line interface for the Green function engine.

use clap::{Parser, Subcommand, ValueEnum};

use greenfn::cli::{cmd_green, cmd_twoparam, cmd_verify, exit_code, Format, Pipeline};
use greenfn::groupdata::{DataSource, Twist};
use greenfn::symring::Residue;

#[derive(Parser)]
#[command(
    name = "greenfn",
    about = "Exact generalized and 2-parameter Green functions for Spin8(q), q odd",
    version
)]
struct Args {
    /// Directory overriding the embedded data files (also: GREENFN_DATA).
    #[arg(long, global = true)]
    data_dir: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TwistArg {
    Split,
    Twisted,
    /// Alias kept for the nonsplit form.
    Nonsplit,
}

impl From<TwistArg> for Twist {
    fn from(t: TwistArg) -> Twist {
        match t {
            TwistArg::Split => Twist::Split,
            TwistArg::Twisted | TwistArg::Nonsplit => Twist::Twisted,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Ascii => Format::Ascii,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generalized Green function table with its orthogonality report.
    Green {
        #[arg(long, default_value = "spin8")]
        group: String,
        #[arg(long, value_enum, default_value = "split")]
        twist: TwistArg,
        #[arg(long, value_enum, default_value = "ascii")]
        format: FormatArg,
        /// Validate an externally computed table (JSON) instead of computing.
        #[arg(long)]
        import_table: Option<String>,
    },
    /// Emit a table of 2-parameter Green functions for a Levi subgroup.
    Twoparam {
        /// Levi subgroup by node labels; only 124 is shipped.
        #[arg(long, default_value = "124")]
        levi: String,
        #[arg(long, value_enum, default_value = "split")]
        twist: TwistArg,
        /// Substitute the resolved signs everywhere.
        #[arg(long, conflicts_with = "symbolic")]
        resolve: bool,
        /// Keep residue-dependent signs symbolic (default).
        #[arg(long)]
        symbolic: bool,
        /// With --resolve: restrict to one residue class of q mod 4.
        #[arg(long, value_parser = ["1", "3"])]
        residue: Option<String>,
        #[arg(long, value_enum, default_value = "ascii")]
        format: FormatArg,
    },
    /// Run a verification suite: orthogonality, self-induction, counts, signs.
    Verify {
        #[arg(value_parser = ["orthogonality", "self-induction", "counts", "signs"])]
        what: String,
    },
}

fn main() {
    let args = Args::parse();
    let dir = args
        .data_dir
        .or_else(|| std::env::var_os("GREENFN_DATA").map(Into::into));
    let src = match dir {
        Some(d) => DataSource::from_dir(d),
        None => DataSource::embedded(),
    };
    let pipeline = Pipeline::new(src);

    let result = match args.command {
        Command::Green { group, twist, format, import_table } => cmd_green(
            &pipeline,
            &group,
            twist.into(),
            format.into(),
            import_table.as_deref(),
        ),
        Command::Twoparam { levi, twist, resolve, symbolic: _, residue, format } => {
            if levi != "124" {
                eprintln!("error: unknown Levi `{levi}`; only 124 is shipped");
                std::process::exit(2);
            }
            let residue = residue.map(|r| if r == "1" { Residue::R1 } else { Residue::R3 });
            cmd_twoparam(&pipeline, twist.into(), resolve, residue, format.into())
        }
        Command::Verify { what } => cmd_verify(&pipeline, &what),
    };

    match result {
        Ok(text) => {
            print!("{text}");
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
