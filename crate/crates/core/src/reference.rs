//! Published worked examples, kept in their printed notation (`3664cd^3 + …`).

use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{CdError, Result};
use crate::ncpoly::{Letter, NcPoly, Word};

pub const U25_CD: &str = "c^4 + 8c^2d + 20cdc + 8dc^2 + 14d^2";

/// ab-index of `Δ_{2,5}`.
pub const U25_AB: &str = "51abab + 29aba^2 + 31ab^2a + 9ab^3 + 29a^2ba + 21a^2b^2 + 9a^3b + a^4 \
    + 51baba + 29bab^2 + 31ba^2b + 9ba^3 + 29b^2ab + 21b^2a^2 + 9b^3a + b^4";

pub const M1_CD: &str = "3664cd^3 + 2432dcd^2 + 2748d^2cd + 3428d^3c + 456c^3d^2 + 1550c^2dcd \
    + 1834c^2d^2c + 1768cdc^2d + 3616cdcdc + 2664cd^2c^2 + 408dc^3d + 1300dc^2dc + 1816dcdc^2 \
    + 1034d^2c^3 + 16c^5d + 110c^4dc + 376c^3dc^2 + 633c^2dc^3 + 460cdc^4 + 66dc^5 + c^7";

pub const M2_CD: &str = "3664cd^3 + 2432dcd^2 + 2752d^2cd + 3432d^3c + 456c^3d^2 + 1552c^2dcd \
    + 1836c^2d^2c + 1768cdc^2d + 3616cdcdc + 2664cd^2c^2 + 408dc^3d + 1300dc^2dc \
    + 1816dcdc^2 + 1036d^2c^3 + 16c^5d + 110c^4dc + 376c^3dc^2 + 634c^2dc^3 + 460cdc^4 \
    + 66dc^5 + c^7";

pub const FANO_CD: &str = "364cdcd + 98cdc^3 + 490cd^2c + 145c^2dc^2 + 221c^2d^2 + 91c^3dc \
    + 19c^4d + c^6 + 462dcdc + 186dc^2d + 26dc^4 + 298d^2c^2 + 482d^3";

pub const VAMOS_CD: &str = "3580cdcdc + 1690cdc^2d + 415cdc^4 + 2670cd^2c^2 + 3700cd^3 \
    + 1596c^2dcd + 635c^2dc^3 + 1922c^2d^2c + 415c^3dc^2 + 510c^3d^2 + 131c^4dc + 19c^5d + c^7 \
    + 2020dcdc^2 + 2720dcd^2 + 1438dc^2dc + 432dc^3d + 63dc^5 + 2984d^2cd + 1098d^2c^3 + 3772d^3c";

/// Parses a sum of terms `[coeff]x^e y …` with positive coefficients.
pub fn parse_printed(text: &str) -> Result<NcPoly> {
    let mut out = NcPoly::zero();
    for term in text.split('+').map(str::trim) {
        let digits = term
            .find(|ch: char| !ch.is_ascii_digit())
            .unwrap_or(term.len());
        let coeff = if digits == 0 {
            BigInt::from(1)
        } else {
            BigInt::from_str(&term[..digits]).map_err(|e| CdError::Parse(e.to_string()))?
        };
        let mut letters = Vec::new();
        let mut chars = term[digits..].chars().peekable();
        while let Some(ch) = chars.next() {
            let letter = Letter::from_char(ch)
                .ok_or_else(|| CdError::Parse(format!("unexpected {ch:?} in {term:?}")))?;
            let mut times = 1;
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut exp = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    exp.push(*d);
                    chars.next();
                }
                times = exp
                    .parse()
                    .map_err(|_| CdError::Parse(format!("bad exponent in {term:?}")))?;
            }
            letters.extend(std::iter::repeat_n(letter, times));
        }
        out.add_term(Word::new(letters), coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_notation() {
        let p = parse_printed(U25_CD).unwrap();
        assert_eq!(p, "cccc + 8*ccd + 20*cdc + 8*dcc + 14*dd".parse().unwrap());
        assert_eq!(parse_printed(FANO_CD).unwrap().len(), 13);
        assert_eq!(parse_printed(M1_CD).unwrap().len(), 21);
        assert_eq!(parse_printed(U25_AB).unwrap().len(), 16);
        assert!(parse_printed("3x").is_err());
    }
}
