use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use diatomic::config::{Config, Tolerances};
use diatomic::oracle::{find_eigenvalue, CentrifugalMode, RadialProblem};
use diatomic::potentials::{PotentialKind, TwoTermPotential};
use diatomic::report::{energy_table, validate, Table, ValidationOptions};
use diatomic::spectra::{energy_coulomb, energy_hulthen, energy_manning_rosen, energy_morse};
use diatomic::units::{reduce, KineticScale, MoleculeParams};
use diatomic::wavefunctions::{count_nodes, samples_csv, state_grid, BoundState, NormConvention};

use crate::{
    CentrifugalArg, Cli, Command, Convention, Family, Format, OracleArgs, Outcome, SpecialFamily, StateArgs, TableArgs,
    ValidateArgs, WavefunctionArgs,
};

pub fn run(cli: &Cli) -> Result<Outcome> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    match &cli.command {
        Command::Table(args) => table(&config, args),
        Command::Special(args) => special(&config, &args.family),
        Command::Validate(args) => validate_table(&config, args),
        Command::Wavefunction(args) => wavefunction(&config, args),
        Command::Oracle(args) => oracle(&config, args),
    }
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome { text, ok: true })
}

fn table(config: &Config, args: &TableArgs) -> Result<Outcome> {
    let mol = config.molecule(&args.molecule)?;
    let t = energy_table(&mol, &args.q, args.n_max)?;
    ok(match args.format {
        Format::Csv => t.to_csv(),
        Format::Json => t.to_json() + "\n",
    })
}

fn special(config: &Config, family: &SpecialFamily) -> Result<Outcome> {
    let (name, n, l, energy, unit) = match *family {
        SpecialFamily::ManningRosen { n, l, a, b, alpha } => (
            "manning-rosen",
            n,
            l,
            energy_manning_rosen(n, l, a, b, alpha)?,
            "hartree",
        ),
        SpecialFamily::Hulthen { n, l, delta } => {
            let h = reduce(delta, 0.0, delta, 1.0, KineticScale::ATOMIC)?;
            ("hulthen", n, l, energy_hulthen(n, l, h.v0, h.e_scale)?, "hartree")
        }
        SpecialFamily::Morse { n, ref molecule } => {
            let mol = config.molecule(molecule)?;
            let e = energy_morse(n, 2.0 * mol.d0, mol.d0, mol.beta(), mol.kinetic())?;
            ("morse", n, 0, e, "eV")
        }
        SpecialFamily::Coulomb { n, l, z } => ("coulomb", n, l, energy_coulomb(n, l, z)?, "hartree"),
    };
    ok(format!("family,n,l,energy,unit\n{name},{n},{l},{energy:.16e},{unit}\n"))
}

fn validate_table(config: &Config, args: &ValidateArgs) -> Result<Outcome> {
    let table: Table = args.table.parse()?;
    let tolerances = match args.tolerance {
        Some(t) => Tolerances::uniform(t)?,
        None => config.tolerances,
    };
    let opts = ValidationOptions {
        tolerances,
        oracle: args.oracle,
        grid_points: config.grid.points,
    };
    let report = validate(table, &config.molecules()?, &opts)?;
    let text = match args.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json() + "\n",
    };
    Ok(Outcome {
        text,
        ok: report.passed(),
    })
}

fn need<T: Copy>(value: Option<T>, flag: &str, family: &str) -> Result<T> {
    value.with_context(|| format!("--family {family} needs --{flag}"))
}

fn molecule(config: &Config, args: &StateArgs, family: &str) -> Result<MoleculeParams> {
    let name = args
        .molecule
        .as_deref()
        .with_context(|| format!("--family {family} needs --molecule"))?;
    Ok(config.molecule(name)?)
}

/// The potential, its kinetic scale and a label for the selected family.
fn selected_potential(config: &Config, args: &StateArgs) -> Result<(TwoTermPotential, KineticScale, &'static str)> {
    Ok(match args.family {
        Family::Molecule => {
            let mol = molecule(config, args, "molecule")?;
            let q = need(args.q, "q", "molecule")?;
            (TwoTermPotential::from_molecule(&mol, q)?, mol.kinetic(), "molecule")
        }
        Family::Morse => {
            let mol = molecule(config, args, "morse")?;
            let p = TwoTermPotential::new(2.0 * mol.d0, mol.d0, mol.beta(), 0.0)?;
            (p, mol.kinetic(), "morse")
        }
        Family::Hulthen => {
            let delta = need(args.delta, "delta", "hulthen")?;
            let kind = PotentialKind::Hulthen { v0: delta, beta: delta };
            (kind.to_two_term(KineticScale::ATOMIC)?, KineticScale::ATOMIC, "hulthen")
        }
        Family::ManningRosen => {
            let b = 1.0 / need(args.inv_b, "inv-b", "manning-rosen")?;
            let kind = PotentialKind::ManningRosen {
                a: 2.0 * b,
                b,
                alpha: args.alpha,
            };
            (
                kind.to_two_term(KineticScale::ATOMIC)?,
                KineticScale::ATOMIC,
                "manning-rosen",
            )
        }
    })
}

fn wavefunction(config: &Config, args: &WavefunctionArgs) -> Result<Outcome> {
    let s = &args.state;
    let (potential, kinetic, label) = selected_potential(config, s)?;
    let state = if potential.q == 0.0 {
        if s.l != 0 {
            bail!("Morse states are s-waves; got l = {}", s.l);
        }
        BoundState::morse(s.n, potential.v0, potential.v1, potential.beta, kinetic)?
    } else {
        BoundState::two_term(s.n, s.l, potential, kinetic)?
    };
    let state = match args.convention {
        Convention::Physical => state,
        Convention::ZMeasure => state.with_convention(NormConvention::ZMeasure)?,
    };
    let grid = state_grid(&state, args.points)?;
    let body = samples_csv(&state, &grid)?;
    let integral = trapezoid_norm(&body)?;
    let mut text = String::new();
    writeln!(text, "# family: {label}")?;
    writeln!(text, "# n: {}, l: {}", state.n, state.l)?;
    writeln!(text, "# energy: {:.16e}", state.energy)?;
    writeln!(text, "# convention: {:?}", state.norm_convention)?;
    writeln!(text, "# norm: {:.16e}", state.norm)?;
    writeln!(text, "# nodes: {}", count_nodes(&state)?)?;
    writeln!(text, "# trapezoid integral of R^2 dr over these samples: {integral:.8}")?;
    text.push_str(&body);
    ok(text)
}

fn trapezoid_norm(csv: &str) -> Result<f64> {
    let mut points = Vec::new();
    for line in csv.lines().skip(1) {
        let mut fields = line.split(',');
        let r: f64 = fields.next().context("missing r")?.parse()?;
        let _ = fields.next();
        let density: f64 = fields.next().context("missing density")?.parse()?;
        points.push((r, density));
    }
    Ok(points
        .windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
        .sum())
}

fn oracle(config: &Config, args: &OracleArgs) -> Result<Outcome> {
    let s = &args.state;
    let (potential, kinetic, _) = selected_potential(config, s)?;
    let mode = match args.centrifugal {
        CentrifugalArg::Exact => CentrifugalMode::Exact,
        CentrifugalArg::GreeneAldrich => CentrifugalMode::GreeneAldrich,
        CentrifugalArg::None => CentrifugalMode::None,
    };
    let problem = RadialProblem::two_term(potential, s.l, kinetic, mode)?
        .with_grid_points(args.grid_points.unwrap_or(config.grid.points))?;
    let r = find_eigenvalue(&problem, s.n)?;
    ok(match args.format {
        Format::Csv => format!(
            "n,l,energy,converged,residual,grid_points_used\n{},{},{:.16e},{},{:.3e},{}\n",
            r.n, s.l, r.energy, r.converged, r.residual, r.grid_points_used
        ),
        Format::Json => serde_json::to_string_pretty(&r)? + "\n",
    })
}
