//! Script generation for external computer-algebra systems.  Each script
//! is self-contained: it declares the polynomial ring over the rationals
//! (the full x_{i,j} grid plus `t` for charts), lists the ideal, and ends
//! with commented commands for an ideal-equality cross-check.

use num_bigint::Sign;
use orbitforge::polyalg::{Monomial, Poly, Var};

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Dialect {
    Singular,
    Macaulay2,
}

impl Dialect {
    fn comment(self) -> &'static str {
        match self {
            Dialect::Singular => "//",
            Dialect::Macaulay2 => "--",
        }
    }
}

/// One exportable system: the ring is determined by `n` and `include_t`,
/// the ideal by `polys`.
pub struct CasTarget<'a> {
    pub title: String,
    pub n: usize,
    pub include_t: bool,
    pub polys: Vec<&'a Poly>,
}

fn var_text(v: Var, dialect: Dialect) -> String {
    match (v, dialect) {
        (Var::X { row, col }, Dialect::Singular) => format!("x_{row}_{col}"),
        (Var::X { row, col }, Dialect::Macaulay2) => format!("x_({row},{col})"),
        (Var::T, _) => "t".to_owned(),
    }
}

fn monomial_text(m: &Monomial, dialect: Dialect) -> String {
    let mut out = String::new();
    for (i, (var, exp)) in m.factors().iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        out.push_str(&var_text(*var, dialect));
        if *exp > 1 {
            out.push_str(&format!("^{exp}"));
        }
    }
    out
}

/// Mirrors the crate's own text rendering, with dialect-specific variable
/// names: terms leading-first, explicit `*` and `^`, unit coefficients
/// elided.
pub fn poly_text(poly: &Poly, dialect: Dialect) -> String {
    if poly.is_zero() {
        return "0".to_owned();
    }
    let one = num_bigint::BigUint::from(1u8);
    let mut out = String::new();
    for (i, (m, c)) in poly.terms_desc().enumerate() {
        let negative = c.sign() == Sign::Minus;
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let abs = c.magnitude();
        if m.is_one() {
            out.push_str(&abs.to_string());
        } else if abs == &one {
            out.push_str(&monomial_text(m, dialect));
        } else {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(&monomial_text(m, dialect));
        }
    }
    out
}

fn variable_list(n: usize, include_t: bool, dialect: Dialect) -> Vec<String> {
    let mut vars = Vec::with_capacity(n * n + usize::from(include_t));
    for row in 1..=n {
        for col in 1..=n {
            vars.push(var_text(Var::x(row, col), dialect));
        }
    }
    if include_t {
        vars.push("t".to_owned());
    }
    vars
}

pub fn render_script(target: &CasTarget, dialect: Dialect) -> String {
    let c = dialect.comment();
    let vars = variable_list(target.n, target.include_t, dialect);
    let mut out = String::new();
    out.push_str(&format!("{c} {}\n", target.title));
    out.push_str(&format!(
        "{c} orbitforge {}; monomial order {}\n",
        env!("CARGO_PKG_VERSION"),
        orbitforge::MONOMIAL_ORDER
    ));
    match dialect {
        Dialect::Singular => {
            out.push_str(&format!("ring R = 0, ({}), Dp;\n", vars.join(", ")));
            if target.polys.is_empty() {
                out.push_str("ideal I = 0;\n");
            } else {
                out.push_str("ideal I =\n");
                for (i, poly) in target.polys.iter().enumerate() {
                    let tail = if i + 1 == target.polys.len() { ";" } else { "," };
                    out.push_str(&format!("  {}{tail}\n", poly_text(poly, dialect)));
                }
            }
        }
        Dialect::Macaulay2 => {
            out.push_str(&format!(
                "R = QQ[{}, MonomialOrder => GLex];\n",
                vars.join(", ")
            ));
            if target.polys.is_empty() {
                out.push_str("I = ideal 0_R;\n");
            } else {
                out.push_str("I = ideal(\n");
                for (i, poly) in target.polys.iter().enumerate() {
                    let tail = if i + 1 == target.polys.len() { ");" } else { "," };
                    out.push_str(&format!("  {}{tail}\n", poly_text(poly, dialect)));
                }
            }
        }
    }
    out.push_str(&format!(
        "{c} ring: {} variables over the rationals; generators: {}\n",
        vars.len(),
        target.polys.len()
    ));
    out.push_str(&format!("{c}\n"));
    match dialect {
        Dialect::Singular => {
            out.push_str(&format!(
                "{c} suggested ideal-equality check against a second ideal J:\n"
            ));
            out.push_str(&format!("{c}   ideal J = ...;\n"));
            out.push_str(&format!(
                "{c}   size(reduce(J, std(I))) == 0 && size(reduce(I, std(J))) == 0;\n"
            ));
        }
        Dialect::Macaulay2 => {
            out.push_str(&format!(
                "{c} suggested ideal-equality check against a second ideal J:\n"
            ));
            out.push_str(&format!("{c}   J = ideal(...);\n"));
            out.push_str(&format!("{c}   I == J\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minor() -> Poly {
        &(&Poly::x(1, 1) * &Poly::x(2, 2)) - &(&Poly::x(1, 2) * &Poly::x(2, 1))
    }

    #[test]
    fn singular_names_and_shape() {
        let poly = minor();
        let target = CasTarget {
            title: "demo".into(),
            n: 2,
            include_t: false,
            polys: vec![&poly],
        };
        let script = render_script(&target, Dialect::Singular);
        assert!(script.contains("ring R = 0, (x_1_1, x_1_2, x_2_1, x_2_2), Dp;"));
        assert!(script.contains("ideal I =\n  x_1_1*x_2_2 - x_1_2*x_2_1;"));
        assert!(script.contains("// suggested ideal-equality check"));
    }

    #[test]
    fn macaulay2_names_and_shape() {
        let poly = minor();
        let target = CasTarget {
            title: "demo".into(),
            n: 2,
            include_t: true,
            polys: vec![&poly],
        };
        let script = render_script(&target, Dialect::Macaulay2);
        assert!(script.contains("R = QQ[x_(1,1), x_(1,2), x_(2,1), x_(2,2), t, MonomialOrder => GLex];"));
        assert!(script.contains("I = ideal(\n  x_(1,1)*x_(2,2) - x_(1,2)*x_(2,1));"));
        assert!(script.contains("--   I == J"));
    }

    #[test]
    fn empty_system_is_the_zero_ideal() {
        let target = CasTarget { title: "demo".into(), n: 1, include_t: false, polys: vec![] };
        let singular = render_script(&target, Dialect::Singular);
        assert!(singular.contains("ideal I = 0;"));
        let m2 = render_script(&target, Dialect::Macaulay2);
        assert!(m2.contains("I = ideal 0_R;"));
    }

    #[test]
    fn coefficients_and_powers_render_explicitly() {
        let p = &(&Poly::from_i64(3) * &(&Poly::x(1, 1) * &Poly::x(1, 1))) - &Poly::t();
        assert_eq!(poly_text(&p, Dialect::Singular), p.to_string());
        assert_eq!(poly_text(&p, Dialect::Singular), "3*x_1_1^2 - t");
        assert_eq!(poly_text(&p, Dialect::Macaulay2), "3*x_(1,1)^2 - t");
    }
}
