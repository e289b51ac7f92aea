use std::f64::consts::FRAC_1_SQRT_2;
use std::io::Write;

use clap::ValueEnum;
use specprob::classical::{product_charfn_gaussian, product_pdf_gaussian, BivariateGaussianParams};
use specprob::export::write_csv;
use specprob::numerics::GridSpec;
use specprob::oscillator::{classical_product_charfn, quasi_f, u_charfn, u_pdf};

use crate::config::Config;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

/// Optional replacements for the default product-law parameters.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub sigma1: Option<f64>,
    pub sigma2: Option<f64>,
    pub rho: Option<f64>,
}

impl Overrides {
    pub fn params(&self) -> Result<BivariateGaussianParams, CliError> {
        Ok(BivariateGaussianParams::centered(
            self.sigma1.unwrap_or(FRAC_1_SQRT_2),
            self.sigma2.unwrap_or(FRAC_1_SQRT_2),
            self.rho.unwrap_or(0.0),
        )?)
    }

    fn is_empty(&self) -> bool {
        self.sigma1.is_none() && self.sigma2.is_none() && self.rho.is_none()
    }
}

pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn write<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        write_csv(w, self.header, &self.rows)
    }

    pub fn column(&self, k: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[k]).collect()
    }
}

/// Grid for the product density: nodes of `[-4, 4]` at spacing 0.01 with
/// the singular node `y = 0` left out.
pub fn fig1_grid() -> Vec<f64> {
    let g = GridSpec::symmetric(4.0, 801).expect("static grid");
    g.points().into_iter().filter(|&y| y != 0.0).collect()
}

pub fn fig1(overrides: &Overrides) -> Result<Table, CliError> {
    let p = overrides.params()?;
    let rows = fig1_grid()
        .into_iter()
        .map(|y| Ok(vec![y, product_pdf_gaussian(&p, y)?]))
        .collect::<Result<_, specprob::Error>>()?;
    Ok(Table { header: &["y", "f"], rows })
}

/// The signed quasi-density on the configured square grid.
pub fn fig2(config: &Config) -> Table {
    let pts = config.grid.points();
    let mut rows = Vec::with_capacity(pts.len() * pts.len());
    for &x in &pts {
        for &y in &pts {
            rows.push(vec![x, y, quasi_f(x, y)]);
        }
    }
    Table { header: &["x", "y", "f"], rows }
}

pub fn fig3_grid() -> GridSpec {
    GridSpec::symmetric(15.0, 3001).expect("static grid")
}

pub const FIG3_S_MAX: f64 = 60.0;

pub fn fig3() -> Result<Table, CliError> {
    let f = u_pdf(&fig3_grid(), FIG3_S_MAX)?;
    let rows = f.points().into_iter().zip(f.values()).map(|(u, v)| vec![u, *v]).collect();
    Ok(Table { header: &["u", "f"], rows })
}

pub fn fig4_grid() -> GridSpec {
    GridSpec::symmetric(5.0, 1001).expect("static grid")
}

/// `phi_U` against the classical product characteristic function. With
/// overrides, `phi_Y` is the real part of the general product law.
pub fn fig4(overrides: &Overrides) -> Result<Table, CliError> {
    let s_grid = fig4_grid().points();
    let rows = if overrides.is_empty() {
        s_grid.into_iter().map(|s| vec![s, u_charfn(s), classical_product_charfn(s)]).collect()
    } else {
        let phi = product_charfn_gaussian(&overrides.params()?)?;
        s_grid.into_iter().map(|s| vec![s, u_charfn(s), phi.eval(s).re]).collect()
    };
    Ok(Table { header: &["s", "phi_U", "phi_Y"], rows })
}

pub fn build(name: FigureName, config: &Config, overrides: &Overrides) -> Result<Table, CliError> {
    match name {
        FigureName::Fig1 => fig1(overrides),
        FigureName::Fig2 => Ok(fig2(config)),
        FigureName::Fig3 => Ok(fig3()?),
        FigureName::Fig4 => fig4(overrides),
    }
}
