//! Exact computer algebra for the skein theories of the torus and the annulus.
//!
//! Everything is computed over the field Q(s, v) of rational functions in the
//! framing and loop parameters, with arbitrary-precision rational coefficients
//! and canonical forms throughout, so every equality test is a decision, not an
//! approximation. The crate models:
//!
//! * the annulus algebra in its symmetrizer-closure generators, with power
//!   sums, type-B Schur elements, and the Chebyshev specialization to the
//!   Kauffman-bracket annulus ([`annulus`]);
//! * the relative annulus bimodule with its two-sided symmetrizer actions and
//!   transition matrices ([`rel_annulus`]);
//! * the three presented torus skein algebras (Dubrovnik, HOMFLYPT,
//!   Kauffman-bracket) with PBW normal ordering, the compatibility morphisms
//!   between them, and a constructive five-generator expression algorithm
//!   ([`torus`]);
//! * the solid-torus module in its idempotent-closure basis, acted on by the
//!   whole torus algebra ([`solid_torus`]);
//! * central meridian elements expanded in Jucys-Murphy symbols with their
//!   content eigenvalues ([`murphy`]).
//!
//! The [`suites`] module packages every closed-form identity these models
//! satisfy as runnable verification grids; the `skeinkit` binary exposes them
//! together with an expression parser ([`expr`]) and canonical serializers.

pub mod annulus;
pub mod cli;
pub mod error;
pub mod expr;
pub mod murphy;
pub mod partitions;
pub mod rel_annulus;
pub mod ring;
pub mod solid_torus;
pub mod suites;
pub mod torus;

pub use error::Error;

/// Which of the three skein theories a value lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Theory {
    /// Kauffman (Dubrovnik) theory with coefficients in Q(s, v).
    Dubrovnik,
    /// HOMFLYPT theory with coefficients in Q(s, v).
    Homflypt,
    /// Kauffman-bracket theory; coefficients specialize via v = -s^-3.
    KauffmanBracket,
}

impl Theory {
    pub fn parse(text: &str) -> crate::error::Result<Self> {
        match text {
            "D" | "d" => Ok(Self::Dubrovnik),
            "H" | "h" => Ok(Self::Homflypt),
            "K" | "k" => Ok(Self::KauffmanBracket),
            other => Err(Error::BadInput(format!(
                "unknown theory `{other}` (expected D, H, or K)"
            ))),
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Self::Dubrovnik => "D",
            Self::Homflypt => "H",
            Self::KauffmanBracket => "K",
        }
    }
}

impl std::fmt::Display for Theory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.letter())
    }
}
