//! Diagnostic matrix dump: one row per line, space-separated `index:num/den` pairs.

use num_rational::BigRational;

use super::field::{parse_rational, rational_string, Field};
use super::rowspace::{RowSpace, SparseVector};
use crate::error::{Error, Result};

pub fn format_row<F: Field>(field: &F, row: &SparseVector<F::Elem>) -> String {
    row.entries()
        .iter()
        .map(|(i, v)| format!("{i}:{}", rational_string(&field.to_rational(v))))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn dump_rows<F: Field>(field: &F, rows: &[SparseVector<F::Elem>]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&format_row(field, row));
        out.push('\n');
    }
    out
}

pub fn dump_rowspace<F: Field>(rs: &RowSpace<F>) -> String {
    let rows: Vec<_> = rs.rows().collect();
    dump_rows(rs.field(), &rows)
}

/// Parses a dump back into rational rows of the given ambient dimension.
pub fn parse_dump(text: &str, dim: usize) -> Result<Vec<SparseVector<BigRational>>> {
    let field = super::field::RationalField;
    text.lines()
        .map(|line| {
            let entries = line
                .split_whitespace()
                .map(|tok| {
                    let (i, v) = tok
                        .split_once(':')
                        .ok_or_else(|| Error::Parse(format!("expected index:value, got {tok:?}")))?;
                    let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad index in {tok:?}")))?;
                    Ok((i, parse_rational(v)?))
                })
                .collect::<Result<Vec<_>>>()?;
            SparseVector::new(&field, dim, entries)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::RationalField;
    use num_bigint::BigInt;

    #[test]
    fn dump_format() {
        let f = RationalField;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let rows = vec![
            SparseVector::new(&f, 4, vec![(0, half.clone()), (3, BigRational::from_integer((-2).into()))]).unwrap(),
            SparseVector::zero(&f, 4),
        ];
        let text = dump_rows(&f, &rows);
        assert_eq!(text, "0:1/2 3:-2/1\n\n");
        assert_eq!(parse_dump(&text, 4).unwrap(), rows);
    }
}
