//! Spec files: TOML documents describing an algebra, optional modules and
//! named polynomial constants.
//!
//! ```toml
//! [constants]
//! t = "1/2"
//!
//! [algebra]
//! builtin = "block"          # virasoro | current | semidirect | block | map-virasoro
//! p = "1"
//! truncation = 8
//!
//! [module.V]
//! theorem = "a1-two"         # or an explicit `basis` with `[module.V.actions]`
//! delta = "1"
//! c = "0"
//! coeffs = ["1", "t", "t^2"]
//! ```
//!
//! An explicit algebra lists `generators`, optional `grades` and
//! `truncation`, and its brackets either as `p_ij = "…"` (`[g_i λ g_j]` lands
//! on the generator whose grade is the sum, or on position `i+j` without
//! grades; `p_i_j` for multi-digit indices) or as
//! `[algebra.brackets]` entries `"a,b" = { c = "…" }`. Missing transposed
//! pairs are filled by skew-symmetry unless `skew_fill = false`.
//!
//! Module actions are `G = "p"` for rank one or `G = [["p11", "p12"], …]`,
//! where row `k`, column `j` is the coefficient of `v_k` in `G_λ v_j`.

use std::collections::BTreeMap;
use std::ops::Range;
use std::path::Path;

use toml_edit::{ImDocument, Item, Table, Value};

use crate::conformal::{
    block, current, map_virasoro, vir_semidirect_current, virasoro, CommAlgebra, ConformalAlgebra, GenVec, LieTable,
};
use crate::error::{Error, Result};
use crate::exactpoly::{parse_poly_with, MultiPoly, Scalar};
use crate::repr::{rank_one_theorem_module, ActionMatrix, ConformalModule, TheoremCase};

#[derive(Clone, Debug)]
pub struct SpecFile {
    pub constants: BTreeMap<String, MultiPoly>,
    pub algebra: ConformalAlgebra,
    /// In file order.
    pub modules: Vec<ConformalModule>,
}

impl SpecFile {
    pub fn module(&self, name: &str) -> Option<&ConformalModule> {
        self.modules.iter().find(|m| m.name == name)
    }
}

pub fn load_spec(path: &Path) -> Result<SpecFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", path.display())))?;
    parse_spec(&text)
}

pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let doc = ImDocument::parse(text).map_err(|e| {
        let (line, column) = line_col(text, e.span().map_or(0, |s| s.start));
        Error::Parse { line, column, message: e.message().trim().to_string() }
    })?;
    let r = Reader { text };
    let root = doc.as_table();
    r.allow_keys(root, &["constants", "algebra", "module"])?;

    let mut constants = BTreeMap::new();
    if let Some(item) = root.get("constants") {
        let t = r.table(item, "constants")?;
        for (k, v) in t.iter() {
            if matches!(k, "d" | "l" | "m" | "n" | "i") {
                return Err(r.at(r.key_span(t, k), format!("`{k}` is reserved")));
            }
            let p = r.poly(v, &constants)?;
            constants.insert(k.to_string(), p);
        }
    }
    let algebra_item = root.get("algebra").ok_or_else(|| r.at(Some(0..0), "missing [algebra] section"))?;
    let algebra = r.algebra(r.table(algebra_item, "algebra")?, &constants)?;

    let mut modules = Vec::new();
    if let Some(item) = root.get("module") {
        let t = r.table(item, "module")?;
        for (name, m) in t.iter() {
            modules.push(r.module(name, r.table(m, name)?, &algebra, &constants)?);
        }
    }
    Ok(SpecFile { constants, algebra, modules })
}

/// 1-based line and character column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

struct Reader<'a> {
    text: &'a str,
}

impl Reader<'_> {
    fn at(&self, span: Option<Range<usize>>, message: impl Into<String>) -> Error {
        let (line, column) = line_col(self.text, span.map_or(0, |s| s.start));
        Error::Parse { line, column, message: message.into() }
    }

    fn key_span(&self, t: &Table, k: &str) -> Option<Range<usize>> {
        t.get_key_value(k).and_then(|(key, _)| key.span())
    }

    fn allow_keys(&self, t: &Table, allowed: &[&str]) -> Result<()> {
        for (k, _) in t.iter() {
            if !allowed.contains(&k) {
                return Err(self.at(self.key_span(t, k), format!("unknown key `{k}`")));
            }
        }
        Ok(())
    }

    fn table<'t>(&self, item: &'t Item, what: &str) -> Result<&'t Table> {
        item.as_table().ok_or_else(|| self.at(item.span(), format!("`{what}` must be a [section] table")))
    }

    fn string<'v>(&self, item: &'v Item) -> Result<(&'v str, usize)> {
        let v = item.as_value().ok_or_else(|| self.at(item.span(), "expected a string"))?;
        self.string_value(v)
    }

    /// The string and the byte offset of its first character in the file.
    fn string_value<'v>(&self, v: &'v Value) -> Result<(&'v str, usize)> {
        let s = v.as_str().ok_or_else(|| self.at(v.span(), "expected a string"))?;
        let start = v.span().map_or(0, |sp| sp.start);
        let rest = &self.text[start.min(self.text.len())..];
        let open = if rest.starts_with("\"\"\"") || rest.starts_with("'''") { 3 } else { 1 };
        Ok((s, start + open))
    }

    fn poly_value(&self, v: &Value, constants: &BTreeMap<String, MultiPoly>) -> Result<MultiPoly> {
        let (s, start) = self.string_value(v)?;
        parse_poly_with(s, constants).map_err(|e| {
            let (line, column) = line_col(self.text, start + e.offset);
            Error::Parse { line, column, message: e.message }
        })
    }

    fn poly(&self, item: &Item, constants: &BTreeMap<String, MultiPoly>) -> Result<MultiPoly> {
        let v = item.as_value().ok_or_else(|| self.at(item.span(), "expected a string"))?;
        self.poly_value(v, constants)
    }

    fn scalar_value(&self, v: &Value, constants: &BTreeMap<String, MultiPoly>) -> Result<Scalar> {
        if let Some(n) = v.as_integer() {
            return Ok(Scalar::from_int(n));
        }
        self.poly_value(v, constants)?.as_constant().ok_or_else(|| self.at(v.span(), "expected a constant"))
    }

    fn scalar(&self, t: &Table, key: &str, constants: &BTreeMap<String, MultiPoly>) -> Result<Scalar> {
        let item = t.get(key).ok_or_else(|| self.at(t.span(), format!("missing `{key}`")))?;
        let v = item.as_value().ok_or_else(|| self.at(item.span(), "expected a value"))?;
        self.scalar_value(v, constants)
    }

    fn opt_scalar(&self, t: &Table, key: &str, constants: &BTreeMap<String, MultiPoly>) -> Result<Option<Scalar>> {
        t.get(key).map(|_| self.scalar(t, key, constants)).transpose()
    }

    fn uint(&self, t: &Table, key: &str) -> Result<Option<u32>> {
        let Some(item) = t.get(key) else { return Ok(None) };
        item.as_integer()
            .and_then(|n| u32::try_from(n).ok())
            .map(Some)
            .ok_or_else(|| self.at(item.span(), format!("`{key}` must be a nonnegative integer")))
    }

    fn strings(&self, t: &Table, key: &str) -> Result<Option<Vec<String>>> {
        let Some(item) = t.get(key) else { return Ok(None) };
        let arr = item.as_array().ok_or_else(|| self.at(item.span(), format!("`{key}` must be an array")))?;
        arr.iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| self.at(v.span(), "expected a string")))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    fn lie(&self, t: &Table) -> Result<LieTable> {
        let item = t.get("lie").ok_or_else(|| self.at(t.span(), "missing `lie`"))?;
        let (name, _) = self.string(item)?;
        match name {
            "sl2" => Ok(LieTable::sl2()),
            "two-dim" => Ok(LieTable::two_dim_nonabelian()),
            other => match other.strip_prefix("abelian:").and_then(|n| n.parse::<usize>().ok()) {
                Some(n) if n > 0 => Ok(LieTable::abelian((1..=n).map(|k| format!("x{k}")).collect())),
                _ => Err(self.at(item.span(), format!("unknown Lie algebra `{other}`"))),
            },
        }
    }

    fn algebra(&self, t: &Table, constants: &BTreeMap<String, MultiPoly>) -> Result<ConformalAlgebra> {
        if let Some(item) = t.get("builtin") {
            let (name, _) = self.string(item)?;
            let allowed: &[&str] = match name {
                "virasoro" => &["builtin"],
                "current" => &["builtin", "lie"],
                "semidirect" => &["builtin", "lie", "a"],
                "block" => &["builtin", "p", "truncation"],
                "map-virasoro" => &["builtin", "quotient", "truncation"],
                other => return Err(self.at(item.span(), format!("unknown builtin `{other}`"))),
            };
            self.allow_keys(t, allowed)?;
            return match name {
                "virasoro" => Ok(virasoro()),
                "current" => current(&self.lie(t)?),
                "semidirect" => vir_semidirect_current(&self.scalar(t, "a", constants)?, &self.lie(t)?),
                "block" => {
                    let n = self.uint(t, "truncation")?.ok_or_else(|| self.at(t.span(), "missing `truncation`"))?;
                    block(&self.scalar(t, "p", constants)?, n)
                }
                _ => {
                    let q = self.uint(t, "quotient")?.filter(|&q| q >= 1);
                    let q = q.ok_or_else(|| self.at(t.span(), "`quotient` must be a positive integer"))?;
                    map_virasoro(&CommAlgebra::polynomial_quotient(q), self.uint(t, "truncation")?)
                }
            };
        }
        let gens = self.strings(t, "generators")?.ok_or_else(|| self.at(t.span(), "missing `generators`"))?;
        let index = |label: &str| {
            gens.iter().position(|g| g == label).ok_or_else(|| Error::UnknownGenerator(label.to_string()))
        };
        let name = match t.get("name") {
            Some(item) => self.string(item)?.0.to_string(),
            None => "spec algebra".to_string(),
        };
        let grades: Option<Vec<u32>> = match t.get("grades") {
            None => None,
            Some(item) => {
                let arr = item.as_array().ok_or_else(|| self.at(item.span(), "`grades` must be an array"))?;
                Some(
                    arr.iter()
                        .map(|v| {
                            v.as_integer()
                                .and_then(|n| u32::try_from(n).ok())
                                .ok_or_else(|| self.at(v.span(), "grades are nonnegative integers"))
                        })
                        .collect::<Result<_>>()?,
                )
            }
        };
        let truncation = self.uint(t, "truncation")?;
        let skew_fill = match t.get("skew_fill") {
            None => true,
            Some(item) => item.as_bool().ok_or_else(|| self.at(item.span(), "`skew_fill` must be a boolean"))?,
        };
        let mut entries: BTreeMap<(usize, usize), GenVec> = BTreeMap::new();
        let mut define = |i: usize, j: usize, v: GenVec| -> Result<()> {
            if entries.insert((i, j), v).is_some() {
                return Err(Error::DuplicateDefinition(format!("[{}_λ {}]", gens[i], gens[j])));
            }
            Ok(())
        };
        for (k, item) in t.iter() {
            match k {
                "name" | "generators" | "grades" | "truncation" | "skew_fill" => {}
                "brackets" => {
                    let bt = self.table(item, "brackets")?;
                    for (pair, val) in bt.iter() {
                        let span = self.key_span(bt, pair);
                        let (a, b) = pair
                            .split_once(',')
                            .ok_or_else(|| self.at(span.clone(), format!("bracket key `{pair}` must be `a,b`")))?;
                        let (i, j) = (index(a.trim())?, index(b.trim())?);
                        let targets = val
                            .as_table_like()
                            .ok_or_else(|| self.at(val.span(), "expected an inline table of targets"))?;
                        let mut v = GenVec::zero();
                        for (target, p) in targets.iter() {
                            let p = p.as_value().ok_or_else(|| self.at(val.span(), "expected a string"))?;
                            v.add_at(index(target)?, &self.poly_value(p, constants)?);
                        }
                        define(i, j, v)?;
                    }
                }
                _ => {
                    let span = self.key_span(t, k);
                    let (i, j) =
                        parse_pair_key(k).ok_or_else(|| self.at(span.clone(), format!("unknown key `{k}`")))?;
                    if i >= gens.len() || j >= gens.len() {
                        return Err(Error::UnknownGenerator(k.to_string()));
                    }
                    let target = match &grades {
                        Some(g) => {
                            let want = g.get(i).zip(g.get(j)).map(|(a, b)| a + b);
                            want.and_then(|w| g.iter().position(|&x| x == w))
                        }
                        None => Some(i + j).filter(|&x| x < gens.len()),
                    }
                    .ok_or_else(|| self.at(span, format!("`{k}` has no target generator")))?;
                    define(i, j, GenVec::single(target, self.poly(item, constants)?))?;
                }
            }
        }
        let mut b = ConformalAlgebra::builder(name, gens.clone());
        if let Some(g) = grades {
            b = b.grades(g, truncation);
        } else if truncation.is_some() {
            return Err(self.at(self.key_span(t, "truncation"), "`truncation` needs `grades`"));
        }
        for ((i, j), v) in entries {
            b = b.bracket(i, j, v);
        }
        if skew_fill {
            b = b.fill_by_skew();
        }
        b.build()
    }

    fn module(
        &self,
        name: &str,
        t: &Table,
        alg: &ConformalAlgebra,
        constants: &BTreeMap<String, MultiPoly>,
    ) -> Result<ConformalModule> {
        if let Some(item) = t.get("theorem") {
            let (kind, _) = self.string(item)?;
            let delta = self.scalar(t, "delta", constants)?;
            let c = self.opt_scalar(t, "c", constants)?.unwrap_or_else(|| Scalar::from_int(0));
            let case = match kind {
                "a1-two" => {
                    self.allow_keys(t, &["theorem", "delta", "c", "coeffs"])?;
                    let item = t.get("coeffs").ok_or_else(|| self.at(t.span(), "missing `coeffs`"))?;
                    let arr = item.as_array().ok_or_else(|| self.at(item.span(), "`coeffs` must be an array"))?;
                    let coeffs = arr.iter().map(|v| self.scalar_value(v, constants)).collect::<Result<_>>()?;
                    TheoremCase::A1Two { delta, c, coeffs }
                }
                "a1-not-two" => {
                    self.allow_keys(t, &["theorem", "delta", "c", "gamma"])?;
                    let gamma = self.opt_scalar(t, "gamma", constants)?.unwrap_or_else(|| Scalar::from_int(0));
                    TheoremCase::A1NotTwo { delta, c, gamma }
                }
                other => return Err(self.at(item.span(), format!("unknown theorem case `{other}`"))),
            };
            let mut m = rank_one_theorem_module(alg, &case)?;
            m.name = name.to_string();
            return Ok(m);
        }
        self.allow_keys(t, &["basis", "actions"])?;
        let basis = self.strings(t, "basis")?.ok_or_else(|| self.at(t.span(), "missing `basis`"))?;
        let acts = t.get("actions").ok_or_else(|| self.at(t.span(), "missing `actions`"))?;
        let acts = self.table(acts, "actions")?;
        let mut actions: BTreeMap<String, ActionMatrix> = BTreeMap::new();
        for (g, item) in acts.iter() {
            if alg.gen_index(g).is_none() {
                return Err(Error::UnknownGenerator(g.to_string()));
            }
            let matrix = if let Some(arr) = item.as_array() {
                arr.iter()
                    .map(|row| {
                        let row = row.as_array().ok_or_else(|| self.at(row.span(), "expected an array row"))?;
                        row.iter().map(|v| self.poly_value(v, constants)).collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?
            } else {
                vec![vec![self.poly(item, constants)?]]
            };
            actions.insert(g.to_string(), matrix);
        }
        ConformalModule::new(name, basis, actions)
    }
}

/// `p_ij` (single digits) or `p_i_j`.
fn parse_pair_key(k: &str) -> Option<(usize, usize)> {
    let rest = k.strip_prefix("p_")?;
    if let Some((a, b)) = rest.split_once('_') {
        return Some((a.parse().ok()?, b.parse().ok()?));
    }
    let mut cs = rest.chars();
    let (a, b) = (cs.next()?.to_digit(10)?, cs.next()?.to_digit(10)?);
    cs.next().is_none().then_some((a as usize, b as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::check_algebra;
    use crate::exactpoly::parse_poly;

    #[test]
    fn explicit_block_one() {
        let s = r#"
[algebra]
name = "B(1) by hand"
generators = ["L0", "L1", "L2"]
grades = [0, 1, 2]
truncation = 2
p_00 = "d + 2*l"
p_01 = "d + 3*l"
p_11 = "2*d + 4*l"
p_02 = "d + 4*l"
"#;
        let spec = parse_spec(s).unwrap();
        let alg = &spec.algebra;
        assert_eq!(alg.graded_poly(1, 0).unwrap(), parse_poly("2*d + 3*l").unwrap());
        assert!(check_algebra(alg).passed());
    }

    #[test]
    fn parse_error_location() {
        let s = "[algebra]\ngenerators = [\"L\"]\np_00 = \"d + + l\"\n";
        match parse_spec(s) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 13)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn toml_syntax_error_location() {
        match parse_spec("[algebra]\nbuiltin = \n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_generator_and_duplicates() {
        let s = "[algebra]\ngenerators = [\"L\"]\n[algebra.brackets]\n\"L,X\" = { L = \"d\" }\n";
        assert!(matches!(parse_spec(s), Err(Error::UnknownGenerator(g)) if g == "X"));
        let s = "[algebra]\ngenerators = [\"L\"]\np_00 = \"d + 2*l\"\n[algebra.brackets]\n\"L,L\" = { L = \"d\" }\n";
        assert!(matches!(parse_spec(s), Err(Error::DuplicateDefinition(_))));
        let s = "[algebra]\nbuiltin = \"virasoro\"\n[module.V]\nbasis = [\"v\"]\n[module.V.actions]\nX = \"d\"\n";
        assert!(matches!(parse_spec(s), Err(Error::UnknownGenerator(g)) if g == "X"));
    }

    #[test]
    fn constants_and_modules() {
        let s = r#"
[constants]
t = "1/2"
[algebra]
builtin = "map-virasoro"
quotient = 3
[module.W]
theorem = "a1-two"
delta = "1"
coeffs = ["1", "t", "t^2"]
[module.V]
basis = ["v"]
[module.V.actions]
L_1 = "d + 2*l"
L_T = "0"
"L_T^2" = [["0"]]
"#;
        let spec = parse_spec(s).unwrap();
        assert_eq!(spec.modules.len(), 2);
        let w = spec.module("W").unwrap();
        assert_eq!(w.action("L_T^2").unwrap()[0][0], parse_poly("1/4*d + 1/4*l").unwrap());
        assert_eq!(spec.module("V").unwrap().rank(), 1);
    }

    #[test]
    fn builtins() {
        for s in [
            "builtin = \"virasoro\"",
            "builtin = \"current\"\nlie = \"sl2\"",
            "builtin = \"semidirect\"\nlie = \"abelian:2\"\na = \"1/2\"",
            "builtin = \"block\"\np = 2\ntruncation = 4",
        ] {
            let spec = parse_spec(&format!("[algebra]\n{s}\n")).unwrap();
            assert!(spec.algebra.rank() >= 1);
        }
        assert!(matches!(parse_spec("[algebra]\nbuiltin = \"nope\"\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_spec("[algebra]\nbuiltin = \"virasoro\"\np = 1\n"),
            Err(Error::Parse { line: 3, column: 1, .. })
        ));
    }

    #[test]
    fn pair_keys() {
        assert_eq!(parse_pair_key("p_12"), Some((1, 2)));
        assert_eq!(parse_pair_key("p_10_3"), Some((10, 3)));
        assert_eq!(parse_pair_key("p_123"), None);
        assert_eq!(parse_pair_key("q_12"), None);
    }
}
