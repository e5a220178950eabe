//! Exact computation of the fifteen sporadic Apéry-like sequences, their
//! binomial transforms `v_n(x) = sum_k C(n,k) (-x)^(n-k) u_k`, the θ-operators
//! annihilating their generating functions, and gcd certificates for
//! congruences `u_n ≡ alpha^n (mod N)`.

pub mod congruence;
pub mod error;
pub mod exact_math;
pub mod operators;
pub mod sequences;
pub mod suite;
pub mod transforms;

pub mod decimal;

pub use error::{Error, Result};
pub use exact_math::Integer;
