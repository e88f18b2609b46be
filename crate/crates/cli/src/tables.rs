//! The three reference tables for the node `y^2 = x^(2m)`: the rank-`d`
//! numerators for `m = 1` and `m = 2`, and the Cohen-Lenstra numerator for
//! `m = 1, 2, 3`.
//!
//! The entries below are transcribed verbatim in their typeset form. They
//! are read with the ordinary polynomial parser after two normalizations:
//! braces around exponents are accepted as parentheses, and in the third
//! table every `+ \cdots` tail is dropped, so only printed coefficients are
//! compared. The `table` command prints the computed values in canonical
//! text form.

use std::time::Instant;

use quotzeta::clzeta::cl_node;
use quotzeta::exactalg::LaurentPoly2;
use quotzeta::quotzeta::{nz_node_free, nz_node_normalization};
use quotzeta::report::VerificationReport;
use quotzeta::series::Window;
use quotzeta::{Error, Result};

/// `(d, NZ of R^d, NZ of the normalization)`.
pub type RankRow = (usize, &'static str, &'static str);

/// Rows for `m = 1`.
pub const TABLE_1: [RankRow; 3] = [
    (1, r"1-t+q t^2", r"1-t+qt"),
    (
        2,
        r"1-(q+1) t+(q^3+q^2+q) t^2-(q^3+q^2) t^3+q^4 t^4",
        r"1 -(q+1)t+(q^3+q^2)t+ (q - q^3 - q^2)t^2 + q^4t^2",
    ),
    (
        3,
        r"1-(q^2+q+1) t+(q^5+q^4+2 q^3+q^2+q) t^2-(q^6+2 q^5+2 q^4+2 q^3) t^3+(q^8+q^7+2 q^6+q^5+q^4) t^4-(q^8+q^7+q^6) t^5+q^9 t^6",
        r"1 + (q^5+q^4+q^3-q^2-q-1) t + (q^8+q^7-2q^5 - 2q^4+q^2+q)t^2 + (q^9 - q^8 - q^7 + q^5+q^4 -q^3)t^3",
    ),
];

/// Rows for `m = 2`.
pub const TABLE_2: [RankRow; 3] = [
    (1, r"1-t+q t^2-q t^3+q^2 t^4", r"1-t+qt-qt^2+q^2 t^2"),
    (
        2,
        r"1-(q+1) t+(q^3+q^2+q) t^2-(q^4+2 q^3+q^2) t^3+(q^6+q^5+2 q^4+q^3) t^4-(q^6+2 q^5+q^4) t^5+(q^7+q^6+q^5) t^6-(q^7+q^6) t^7+q^8 t^8",
        r"1 + (q^3 + q^2 - q - 1)t + (q^6 + q^5 - 2q^3 - q^2 + q)t^2 + (q^7 - 2q^5 + q^3)t^3 + (q^8 - q^7 - q^6 + q^5)t^4",
    ),
    (
        3,
        r"1-(q^2+q+1) t+(q^5+q^4+2 q^3+q^2+q) t^2-(q^7+2 q^6+3 q^5+2 q^4+2 q^3) t^3+(q^{10}+q^9+3 q^8+3 q^7+4 q^6+2 q^5+q^4) t^4-(q^{11}+3 q^{10}+4 q^9+5 q^8+3 q^7+2 q^6) t^5+(q^{13}+2 q^{12}+4 q^{11}+4 q^{10}+5 q^9+2 q^8+q^7) t^6-(q^{14}+3 q^{13}+4 q^{12}+5 q^{11}+3 q^{10}+2 q^9) t^7+(q^{16}+q^{15}+3 q^{14}+3 q^{13}+4 q^{12}+2 q^{11}+q^{10}) t^8-(q^{16}+2 q^{15}+3 q^{14}+2 q^{13}+2 q^{12}) t^9+(q^{17}+q^{16}+2 q^{15}+q^{14}+q^{13}) t^{10}-(q^{17}+q^{16}+q^{15}) t^{11}+q^{18} t^{12}",
        r"1 + (q^5 + q^4 + q^3 - q^2 - q - 1)t + (q^{10} + q^9 + 2q^8 - q^6 - 3q^5 - 2q^4 + q^2 + q)t^2 + (q^{13} + 2q^{12} + q^{11} - 2q^{10} - 3q^9 - 3q^8 + 2q^6 + 2q^5 + q^4 - q^3)t^3 + (q^{16} + q^{15} + q^{14} - 2q^{13} - 3q^{12} - 2q^{11} + q^{10} + 3q^9 + q^8 - q^6)t^4 + (q^{17} - q^{15} - 2q^{14} + 2q^{12} + q^{11} - q^9)t^5 + (q^{18} - q^{17} - q^{16} + q^{14} + q^{13} - q^{12})t^6 ",
    ),
];

/// `(m, NZ-hat)` with `q` standing for `u = L^-1`, through `t^5`.
pub const TABLE_3: [(usize, &str); 3] = [
    (
        1,
        r"1  - (q + q^2 + q^3 + q^4 + q^5 +\cdots)t + (q + q^2 + 2q^3 + 2q^4 + 3q^5 + 3q^6 + 4q^7 + 4q^8 + \cdots)t^2 - (q^3 + 2q^4 + 3q^5 + 5q^6 + 6q^7 + 8q^8 + 10q^9 + 12q^{10} + \cdots)t^3 + (q^4 + q^5 + 3q^6 + 4q^7 + 7q^8 + 9q^9 + 14q^{10} + 17q^{11} + \cdots)t^4 - (q^7 + 2q^8 + 4q^9 + 7q^{10} + 11q^{11} + 16q^{12} + 23q^{13} + 31q^{14} + \cdots)t^5+\cdots",
    ),
    (
        2,
        r"1  - (q + q^2 + q^3 + q^4 + q^5 +\cdots)t + (q + q^2 + 2q^3 + 2q^4 + 3q^5 + 3q^6 + 4q^7 + 4q^8 + \cdots)t^2 - (q^2 + 2q^3 + 3q^4 + 4q^5 + 6q^6 + 7q^7 + 9q^8 + 11q^9 + \cdots)t^3 + (q^2 + q^3 + 3q^4 + 4q^5 + 7q^6 + 9q^7 + 13q^8 + 16q^9 + \cdots)t^4 - (q^4 + 3q^5 + 5q^6 + 9q^7 + 13q^8 + 19q^9 + 26q^{10} + 35q^{11} + \cdots)t^5 + \cdots",
    ),
    (
        3,
        r"1 - (q + q^2 + q^3 + q^4 + q^5 +\cdots)t + (q + q^2 + 2q^3 + 2q^4 + 3q^5 + 3q^6 + 4q^7 + 4q^8 + \cdots)t^2 - (q^2 + 2q^3 + 3q^4 + 4q^5 + 6q^6 + 7q^7 + 9q^8 + 11q^9 +\cdots)t^3 + (q^2 + q^3 + 3q^4 + 4q^5 + 7q^6 + 9q^7 + 13q^8 + 16q^9 + \cdots)t^4 - (q^3 + 2q^4 + 4q^5 + 6q^6 + 10q^7 + 14q^8 + 20q^9 + 27q^{10} + \cdots)t^5 + \cdots",
    ),
];

/// Window used when printing and checking the third table.
pub const TABLE_3_WINDOW: Window = Window { u_prec: 15, t_prec: 6 };

/// Parses a typeset entry, dropping `+ \cdots` tails.
pub fn parse_entry(s: &str) -> Result<LaurentPoly2> {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(i) = rest.find(r"\cdots") {
        let head = rest[..i].trim_end();
        let head = head
            .strip_suffix('+')
            .ok_or_else(|| Error::Parse(format!("tail without '+' in {s:?}")))?;
        out.push_str(head);
        rest = &rest[i + r"\cdots".len()..];
    }
    out.push_str(rest);
    out.parse()
}

fn rank_table(n: u8) -> Result<(usize, &'static [RankRow])> {
    match n {
        1 => Ok((1, &TABLE_1)),
        2 => Ok((2, &TABLE_2)),
        _ => Err(Error::Domain(format!("table {n} is not a rank table"))),
    }
}

/// The computed table in canonical text form, tab separated, one row per
/// line after a header.
pub fn render(n: u8) -> Result<String> {
    let mut out = String::new();
    if n == 3 {
        out.push_str("m\tNZ-hat (q = L^-1)\n");
        for (m, _) in TABLE_3 {
            let cl = cl_node(m, TABLE_3_WINDOW)?;
            out.push_str(&format!("{m}\t{}\n", cl.numerator.to_text("q")));
        }
        return Ok(out);
    }
    let (m, rows) = rank_table(n)?;
    out.push_str(&format!("d\tNZ free (m = {m})\tNZ normalization (m = {m})\n"));
    for (d, _, _) in rows {
        let free = nz_node_free(m, *d).to_t_grouped_string("q", "t");
        let norm = nz_node_normalization(m, *d).to_t_grouped_string("q", "t");
        out.push_str(&format!("{d}\t{free}\t{norm}\n"));
    }
    Ok(out)
}

/// Compares the computed values with the transcribed table `n`.
pub fn table_check(n: u8) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut parts = Vec::new();
    if n == 3 {
        for (m, entry) in TABLE_3 {
            let printed = parse_entry(entry)?;
            let numerator = cl_node(m, TABLE_3_WINDOW)?.numerator;
            // keep u^i t^j for i up to the last printed power of each t^j
            let mut computed = LaurentPoly2::zero();
            for j in 0..TABLE_3_WINDOW.t_prec {
                let row = printed.t_coeff(j as i64);
                let Some((_, top)) = row.q_range() else { continue };
                if top as usize >= TABLE_3_WINDOW.u_prec {
                    return Err(Error::Domain(format!("printed q^{top} lies outside the window")));
                }
                for (i, c) in numerator.t_coeff(j).iter().enumerate().take(top as usize + 1) {
                    computed += &LaurentPoly2::monomial(c.clone(), i as i64, j as i64);
                }
            }
            parts.push(
                VerificationReport::new("row")
                    .param("m", m)
                    .compare_polys(&computed, &printed),
            );
        }
    } else {
        let (m, rows) = rank_table(n)?;
        for (d, free, norm) in rows {
            parts.push(
                VerificationReport::new("free")
                    .param("d", d)
                    .compare_polys(&nz_node_free(m, *d), &parse_entry(free)?),
            );
            parts.push(
                VerificationReport::new("normalization")
                    .param("d", d)
                    .compare_polys(&nz_node_normalization(m, *d), &parse_entry(norm)?),
            );
        }
    }
    Ok(VerificationReport::new(format!("table-{n}")).absorb(parts).timed(start))
}

/// Count of coefficients compared against the third table.
pub fn table_3_printed_terms() -> Result<usize> {
    TABLE_3
        .iter()
        .map(|(_, e)| Ok(parse_entry(e)?.num_terms()))
        .sum::<Result<usize>>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tails_are_dropped() {
        let p = parse_entry(r"1 - (q + q^2 +\cdots)t + \cdots").unwrap();
        assert_eq!(p.to_string(), "1 - q*t - q^2*t");
        assert!(parse_entry(r"1 \cdots").is_err());
    }

    #[test]
    fn rank_tables_render() {
        let text = render(1).unwrap();
        assert!(text.lines().nth(1).unwrap().starts_with("1\t1 - t + q*t^2\t"));
        assert!(render(4).is_err());
    }
}
