use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, ValueEnum};
use colorlie_core::algebra::{from_associative, GradedAlgebra, Kind, MatrixRep};
use colorlie_core::constructions::{
    build_adjoint_order3, build_color_gl, build_generalized_clifford, build_iso3_poincare, build_mat_order3,
    clifford_factor, clifford_tensor_gl, decolor, default_multiplier, tensor_clifford, ColorGlSpec,
};
use colorlie_core::factor::{Bicharacter, CommutationFactor};
use colorlie_core::grading::AbelianGroup;
use colorlie_core::spec_file::{AlgebraSpecFile, AssociativeSpecFile};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Construction {
    ColorGl,
    Clifford,
    TensorClifford,
    Mat3,
    Iso3,
    Adjoint3,
    Color3Family,
    Decolor,
    FromAssociative,
}

#[derive(Args)]
pub struct BuildArgs {
    #[arg(value_enum)]
    construction: Construction,
    /// Block sizes, e.g. 1,1,1.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Orders of the cyclic factors of the grading group, e.g. 3,3. Empty means trivial.
    #[arg(long, value_delimiter = ',')]
    group: Vec<u32>,
    /// Root of unity order for the factor exponents.
    #[arg(long)]
    factor_order: Option<u32>,
    /// Factor exponent matrix, rows separated by ';', e.g. "0,1;-1,0".
    #[arg(long, allow_hyphen_values = true)]
    exponents: Option<String>,
    /// Block degrees as residue vectors, e.g. "0;1;2". Defaults to enumerating the group.
    #[arg(long)]
    degrees: Option<String>,
    /// Clifford order n (ζ_n).
    #[arg(long, default_value_t = 3)]
    n: u32,
    /// Number of Clifford generators.
    #[arg(long, default_value_t = 2)]
    p: usize,
    /// Spacetime dimension for iso3.
    #[arg(long)]
    dim: Option<usize>,
    /// Keep only the first grade of mat3.
    #[arg(long)]
    elementary: bool,
    /// Input spec (decolor, from_associative, and optionally tensor_clifford/adjoint3).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Multiplier exponents for decolor, same syntax as --exponents. Defaults to the canonical one.
    #[arg(long, allow_hyphen_values = true)]
    multiplier: Option<String>,
    /// Root of unity order for --multiplier.
    #[arg(long)]
    multiplier_order: Option<u32>,
    /// Where to write the spec; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn parse_rows(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .map(|row| {
            let row = row.trim();
            if row.is_empty() {
                return Ok(Vec::new());
            }
            row.split(',')
                .map(|x| x.trim().parse::<i64>().with_context(|| format!("bad integer {x:?} in {s:?}")))
                .collect()
        })
        .collect()
}

impl BuildArgs {
    fn group(&self) -> Result<AbelianGroup> {
        Ok(AbelianGroup::new(self.group.clone())?)
    }

    /// The factor from --group/--factor-order/--exponents, or `default` when
    /// no group is given.
    fn factor(&self, default: impl FnOnce() -> Result<CommutationFactor>) -> Result<CommutationFactor> {
        if self.group.is_empty() && self.exponents.is_none() {
            return default();
        }
        let group = self.group()?;
        let Some(exps) = &self.exponents else {
            return Ok(Bicharacter::trivial(group));
        };
        let order = match self.factor_order {
            Some(l) => l,
            None => self.group.iter().copied().max().unwrap_or(1),
        };
        Ok(Bicharacter::new(group, order, parse_rows(exps)?)?)
    }

    fn gl_spec(&self, default: impl FnOnce() -> Result<CommutationFactor>) -> Result<ColorGlSpec> {
        ensure!(!self.sizes.is_empty(), "--sizes is required");
        let factor = self.factor(default)?;
        Ok(match &self.degrees {
            None => ColorGlSpec::enumerated(self.sizes.clone(), factor)?,
            Some(d) => {
                let degrees = parse_rows(d)?
                    .iter()
                    .map(|r| factor.group().element(r))
                    .collect::<Result<Vec<_>, _>>()?;
                ColorGlSpec::new(self.sizes.clone(), degrees, factor)?
            }
        })
    }

    fn input(&self) -> Result<&Path> {
        self.input.as_deref().context("--input is required")
    }

    /// The base algebra: --input when given, otherwise gl(--sizes) with the trivial factor.
    fn base(&self) -> Result<GradedAlgebra> {
        if self.input.is_some() {
            return load_algebra(self.input()?).map(|(a, _)| a);
        }
        let spec = self.gl_spec(|| Ok(Bicharacter::trivial(AbelianGroup::trivial())))?;
        Ok(build_color_gl(&spec)?.0)
    }
}

fn trivial() -> Result<CommutationFactor> {
    Ok(Bicharacter::trivial(AbelianGroup::trivial()))
}

fn super_z2() -> Result<CommutationFactor> {
    Ok(Bicharacter::new(AbelianGroup::cyclic(2), 2, vec![vec![1]])?)
}

pub fn load_algebra(path: &Path) -> Result<(GradedAlgebra, AlgebraSpecFile)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = AlgebraSpecFile::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    let a = file.to_algebra().with_context(|| format!("loading {}", path.display()))?;
    Ok((a, file))
}

fn with_rep(a: &GradedAlgebra, rep: Option<&MatrixRep>) -> Result<AlgebraSpecFile> {
    let file = AlgebraSpecFile::from_algebra(a);
    Ok(match rep {
        Some(r) => file.with_representation(a, r)?,
        None => file,
    })
}

pub fn run_build(args: &BuildArgs) -> Result<()> {
    let file = match args.construction {
        Construction::ColorGl => {
            let (a, rep) = build_color_gl(&args.gl_spec(trivial)?)?;
            with_rep(&a, Some(&rep))?
        }
        Construction::Clifford => {
            let (cl, rep) = build_generalized_clifford(args.n, args.p)?;
            let factor = clifford_factor(args.n, args.p)?;
            let a = from_associative(Kind::color_for(&factor)?, factor, &cl.algebra)?;
            with_rep(&a, rep.ok().as_ref())?
        }
        Construction::TensorClifford => with_rep(&tensor_clifford(&args.base()?, args.n, args.p)?, None)?,
        Construction::Mat3 => {
            let [m1, m2, m3] = args.sizes[..] else {
                bail!("mat3 needs --sizes m1,m2,m3");
            };
            let (a, rep) = build_mat_order3(m1, m2, m3, args.elementary)?;
            with_rep(&a, Some(&rep))?
        }
        Construction::Iso3 => {
            let d = args.dim.context("iso3 needs --dim")?;
            with_rep(&build_iso3_poincare(d)?, None)?
        }
        Construction::Adjoint3 => with_rep(&build_adjoint_order3(&args.base()?)?, None)?,
        Construction::Color3Family => with_rep(&clifford_tensor_gl(&args.gl_spec(super_z2)?)?, None)?,
        Construction::Decolor => {
            let (a, _) = load_algebra(args.input()?)?;
            let sigma = match &args.multiplier {
                None => default_multiplier(a.factor())?,
                Some(m) => {
                    let order = args.multiplier_order.unwrap_or(a.factor().root_order());
                    Bicharacter::new(a.group().clone(), order, parse_rows(m)?)?
                }
            };
            let d = decolor(&a, &sigma)?;
            AlgebraSpecFile::from_algebra(&d).with_multiplier(&sigma)
        }
        Construction::FromAssociative => {
            let path = args.input()?;
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let (kind, factor, assoc) = AssociativeSpecFile::from_json(&text)
                .and_then(|f| f.to_associative())
                .with_context(|| format!("loading {}", path.display()))?;
            with_rep(&from_associative(kind, factor, &assoc)?, None)?
        }
    };
    let text = file.to_json();
    match &args.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}
