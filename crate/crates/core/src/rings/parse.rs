use super::{factorize, is_prime, is_prime_power, BlockSpec, RingSpec};
use crate::error::{Error, Result};

/// Parses a ring spec such as `"GF(4) x Z8"` or `"vs(3,2)"` into canonical
/// blocks.
///
/// Grammar (whitespace between tokens is ignored):
///
/// ```text
/// spec := term ( "x" term )*
/// term := "GF(" int ")" | "Z" int | "chain(" int "," int ")" | "vs(" int "," int ")"
/// ```
///
/// `Zn` is split into one block per prime power, `chain(q,1)` becomes
/// `GF(q)` and `vs(q,1)` becomes `chain(q,2)`.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut blocks = Vec::new();
    p.skip_ws();
    p.term(&mut blocks)?;
    loop {
        p.skip_ws();
        if p.at_end() {
            break;
        }
        p.expect(b"x")?;
        p.skip_ws();
        p.term(&mut blocks)?;
    }
    Ok(RingSpec {
        blocks,
        source_text: text.to_string(),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, tok: &[u8]) -> bool {
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &[u8]) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", String::from_utf8_lossy(tok)))
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let value: u64 = digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "integer out of range".into(),
        })?;
        if value > u32::MAX as u64 {
            return Err(Error::Syntax {
                pos: start,
                msg: "integer out of range".into(),
            });
        }
        Ok(value)
    }

    fn open(&mut self) -> Result<()> {
        self.skip_ws();
        self.expect(b"(")
    }

    fn close(&mut self) -> Result<()> {
        self.skip_ws();
        self.expect(b")")
    }

    fn comma(&mut self) -> Result<()> {
        self.skip_ws();
        self.expect(b",")
    }

    fn term(&mut self, out: &mut Vec<BlockSpec>) -> Result<()> {
        if self.eat(b"GF") {
            self.open()?;
            let q = self.int()?;
            self.close()?;
            check_field_size(q)?;
            out.push(BlockSpec::Field { q: q as u32 });
        } else if self.eat(b"chain") {
            self.open()?;
            let q = self.int()?;
            self.comma()?;
            let k = self.int()?;
            self.close()?;
            check_field_size(q)?;
            if k < 1 {
                return Err(Error::InvalidParameter(format!(
                    "chain nilpotency index must be at least 1, got {k}"
                )));
            }
            out.push(canonical_chain(q as u32, k as u32));
        } else if self.eat(b"vs") {
            self.open()?;
            let q = self.int()?;
            self.comma()?;
            let d = self.int()?;
            self.close()?;
            if q < 2 {
                return Err(Error::InvalidParameter(format!(
                    "q must be at least 2, got {q}"
                )));
            }
            if !is_prime(q) {
                return Err(Error::InvalidParameter(format!(
                    "vs blocks need a prime residue field size, got {q}"
                )));
            }
            if d < 1 {
                return Err(Error::InvalidParameter(format!(
                    "vs dimension must be at least 1, got {d}"
                )));
            }
            out.push(if d == 1 {
                BlockSpec::Chain { q: q as u32, k: 2 }
            } else {
                BlockSpec::VsLocal {
                    q: q as u32,
                    d: d as u32,
                }
            });
        } else if self.eat(b"Z") {
            let n = self.int()?;
            if n < 2 {
                return Err(Error::InvalidParameter(format!("Zn needs n >= 2, got {n}")));
            }
            for (p, e) in factorize(n) {
                out.push(canonical_chain(p as u32, e));
            }
        } else {
            return self.err("expected one of `GF(`, `Z`, `chain(`, `vs(`");
        }
        Ok(())
    }
}

fn check_field_size(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!(
            "q must be at least 2, got {q}"
        )));
    }
    if !is_prime_power(q) {
        return Err(Error::InvalidParameter(format!(
            "q must be a prime power, got {q}"
        )));
    }
    Ok(())
}

fn canonical_chain(q: u32, k: u32) -> BlockSpec {
    if k == 1 {
        BlockSpec::Field { q }
    } else {
        BlockSpec::Chain { q, k }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BlockSpec::*;

    fn blocks(s: &str) -> Vec<BlockSpec> {
        parse_ring_spec(s).unwrap().blocks
    }

    #[test]
    fn integers_mod_n_factor_into_prime_power_blocks() {
        assert_eq!(blocks("Z12"), vec![Chain { q: 2, k: 2 }, Field { q: 3 }]);
        assert_eq!(blocks("Z16"), vec![Chain { q: 2, k: 4 }]);
        assert_eq!(blocks("Z30").len(), 3);
    }

    #[test]
    fn mixed_terms_and_whitespace() {
        assert_eq!(
            blocks("GF(4) x Z8"),
            vec![Field { q: 4 }, Chain { q: 2, k: 3 }]
        );
        assert_eq!(
            blocks("  GF( 2 )x   chain( 3 , 2 )  "),
            vec![Field { q: 2 }, Chain { q: 3, k: 2 }]
        );
        assert_eq!(blocks("GF(2)x GF(3)x GF(5)").len(), 3);
    }

    #[test]
    fn canonicalization() {
        assert_eq!(blocks("vs(3,1)"), vec![Chain { q: 3, k: 2 }]);
        assert_eq!(blocks("chain(5,1)"), vec![Field { q: 5 }]);
        assert_eq!(blocks("vs(2,2)"), vec![VsLocal { q: 2, d: 2 }]);
    }

    #[test]
    fn syntax_errors_report_position() {
        assert_eq!(
            parse_ring_spec("Zx"),
            Err(Error::Syntax {
                pos: 1,
                msg: "expected an integer".into()
            })
        );
        assert!(matches!(
            parse_ring_spec(""),
            Err(Error::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse_ring_spec("GF(2) y GF(3)"),
            Err(Error::Syntax { pos: 6, .. })
        ));
        assert!(matches!(parse_ring_spec("GF(2"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_ring_spec("GF(2) x"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_ring_spec("Z99999999999"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            parse_ring_spec("Z1"),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            parse_ring_spec("Z0"),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            parse_ring_spec("vs(4,2)"),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            parse_ring_spec("vs(3,0)"),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            parse_ring_spec("GF(6)"),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            parse_ring_spec("GF(1)"),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            parse_ring_spec("chain(2,0)"),
            Err(Error::InvalidParameter(_))
        ));
    }
}
