use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use torus_surfaces::classify::output::{self, Format};
use torus_surfaces::classify::{self, EdgeLabel};
use torus_surfaces::periodicgraph::singular_graph;
use torus_surfaces::spacegroup::{make_group, SpaceGroupName};
use torus_surfaces::Result;

#[derive(Parser)]
#[command(name = "torus-surfaces", version, about = "Maximal-order group actions on surfaces in the 3-torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the six space-group presentations.
    Groups {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the singular graph of a group modulo its translation lattice.
    SingularGraph {
        name: SpaceGroupName,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the marked edges of a group with their quotient graphs.
    Edges {
        name: SpaceGroupName,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write one OBJ polyline file per marked edge into this directory.
        #[arg(long)]
        obj_dir: Option<PathBuf>,
    },
    /// Connected covers for one marked edge.
    Classify {
        name: SpaceGroupName,
        edge: EdgeLabel,
        #[arg(long, default_value_t = 512)]
        max_index: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Actions of maximal order by genus.
    Table {
        #[arg(long, default_value_t = 101)]
        max_genus: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check connectivity, cycle images and constraints for all nine cases.
    Verify {
        #[arg(long, default_value_t = 64)]
        max_index: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Groups { format } => {
            let gs = SpaceGroupName::ALL.into_iter().map(make_group).collect::<Result<Vec<_>>>()?;
            print!("{}", output::groups(&gs, format));
        }
        Command::SingularGraph { name, format } => {
            let g = make_group(name)?;
            print!("{}", output::singular_graph(&g, &singular_graph(&g), format));
        }
        Command::Edges { name, format, obj_dir } => {
            let g = make_group(name)?;
            let cgs = classify::resolve_group(&g)?;
            if let Some(dir) = obj_dir {
                std::fs::create_dir_all(&dir).map_err(io_err)?;
                for cg in &cgs {
                    let path = dir.join(format!("{}_{}.obj", cg.case.group, cg.case.label));
                    std::fs::write(&path, cg.graph.to_obj(&g.frame)).map_err(io_err)?;
                }
            }
            print!("{}", output::edges(&cgs, format));
        }
        Command::Classify { name, edge, max_index, format } => {
            let cls = classify::classify_case(name, edge, max_index)?;
            print!("{}", output::classification(&cls, format));
        }
        Command::Table { max_genus, format } => {
            let t = classify::genus_table(max_genus.max(2))?;
            print!("{}", output::table(&t, format));
        }
        Command::Verify { max_index, format } => {
            let r = classify::verify_claims(max_index);
            print!("{}", output::verify(&r, format));
            return Ok(r.pass);
        }
    }
    Ok(true)
}

fn io_err(e: std::io::Error) -> torus_surfaces::Error {
    torus_surfaces::Error::Io(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
