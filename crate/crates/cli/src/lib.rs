//! Command-line front end for the `bks` library.
//!
//! Every command reads a JSON [`input::InputDocument`], prints a
//! [`report::Report`] on stdout and exits with 0 (claims hold), 1 (a
//! checked claim failed) or 2 (usage or input error). Diagnostics go to
//! stderr.

pub mod args;
pub mod commands;
pub mod error;
pub mod fuzz;
pub mod input;
pub mod report;

use std::path::Path;

use args::{Cli, Command};
use commands::Context;
use error::Result;
use input::InputDocument;
use report::Report;

pub fn run(cli: &Cli) -> Result<Report> {
    let ctx = Context {
        cfg: cli.global.config()?,
        seed: cli.global.seed,
    };
    let load = |p: &Path| InputDocument::read(p).map(|doc| (p.display().to_string(), doc));
    match &cli.command {
        Command::VerifyIdentity { file } => {
            let (name, doc) = load(file)?;
            commands::verify_identity(&ctx, &name, &doc)
        }
        Command::Witness { file } => {
            let (name, doc) = load(file)?;
            commands::witness(&ctx, &name, &doc)
        }
        Command::Theorem1 { file } => {
            let (name, doc) = load(file)?;
            commands::theorem1(&ctx, &name, &doc)
        }
        Command::Theorem2 { file } => {
            let (name, doc) = load(file)?;
            commands::theorem2(&ctx, &name, &doc)
        }
        Command::HvLp { file } => {
            let (name, doc) = load(file)?;
            commands::hv_lp(&ctx, &name, &doc)
        }
        Command::Chsh { file } => {
            let (name, doc) = load(file)?;
            commands::chsh(&ctx, &name, &doc)
        }
        Command::Seq { file, n } => {
            let (name, doc) = load(file)?;
            commands::seq(&ctx, &name, &doc, *n)
        }
        Command::Fuzz { dim, count } => fuzz::fuzz(&ctx, *dim, *count),
    }
}
