//! Exact arithmetic: the residue field `F_q`, truncated rings `O/pi^N`,
//! elements of `K` with capped precision, and roots of unity `mu_n`.

pub mod field;
pub mod mu;
pub mod norm;
pub mod padic;
pub mod parse;
pub mod ring;

pub use field::{divisors, is_prime, FElem, FieldCtx, FIELD_BOUND};
pub use mu::{
    mu_dlog, mu_embed, permutation_sign, power_residue_char, zolotarev_sign, MuCtx, MuScalar,
    RepRule,
};
pub use norm::{norm_check, Tower};
pub use padic::{KElem, LocalField, ZERO_VAL};
pub use parse::parse_elem;
pub use ring::{RElem, RingCtx, MAX_F};
