//! Problem files: a group, named modules, an optional local datum, and named
//! data for the arithmetic commands. Every parse error carries a JSON pointer.

use std::collections::BTreeSet;

use galcoh::abelian::int::parse_int;
use galcoh::abelian::{Int, IntMatrix, PresentedAbelianGroup};
use galcoh::arith::{CocharacterDatum, HomSpaceDatum, IsogenyDatum};
use galcoh::gmodule::{
    augmentation_ideal, augmentation_quotient, permutation_module, regular_module, sign_module, trivial_module, GModule, GModuleHom,
    PermutationModule,
};
use galcoh::group::{by_name, FiniteGroup, Subgroup};
use galcoh::sha::{LocalDatum, PlaceSelection};
use galcoh::{Error, Result};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

pub struct Problem {
    pub group: FiniteGroup,
    raw: Map<String, Value>,
    pub datum: LocalDatum,
    pub selection: PlaceSelection,
}

fn err(path: &str, msg: impl Into<String>) -> Error {
    Error::input(if path.is_empty() { "/" } else { path }, msg)
}

/// Structural errors raised while building objects from the file are input errors at `path`.
fn at<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Structural(m) => err(path, m),
        other => other,
    })
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| err(path, "expected a string"))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| err(path, format!("missing field `{key}`")))
}

/// Integers are decimal strings; plain JSON integers are accepted too.
fn integer(v: &Value, path: &str) -> Result<Int> {
    match v {
        Value::String(s) => parse_int(s).ok_or_else(|| err(path, format!("`{s}` is not a decimal integer"))),
        Value::Number(n) if n.is_i64() => Ok(Int::from(n.as_i64().expect("checked"))),
        Value::Number(n) if n.is_u64() => Ok(Int::from(n.as_u64().expect("checked"))),
        _ => Err(err(path, "expected an integer (decimal string)")),
    }
}

fn small(v: &Value, path: &str) -> Result<usize> {
    integer(v, path)?.to_string().parse().map_err(|_| err(path, "expected a small non-negative integer"))
}

/// Rows of a matrix; `cols` fixes the row length when known.
fn matrix(v: &Value, path: &str, cols: Option<usize>) -> Result<IntMatrix> {
    let rows = array(v, path)?;
    let width = match (cols, rows.first()) {
        (Some(c), _) => c,
        (None, Some(r)) => array(r, &format!("{path}/0"))?.len(),
        (None, None) => 0,
    };
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let p = format!("{path}/{i}");
        let entries = array(r, &p)?;
        if entries.len() != width {
            return Err(err(&p, format!("row has length {}, expected {width}", entries.len())));
        }
        out.push(entries.iter().enumerate().map(|(j, e)| integer(e, &format!("{p}/{j}"))).collect::<Result<Vec<_>>>()?);
    }
    Ok(IntMatrix::from_rows(out, width))
}

fn square(v: &Value, path: &str, n: usize) -> Result<IntMatrix> {
    let m = matrix(v, path, Some(n))?;
    if m.rows() != n {
        return Err(err(path, format!("expected {n} rows, found {}", m.rows())));
    }
    Ok(m)
}

fn parse_group(v: &Value) -> Result<FiniteGroup> {
    let path = "/group";
    let g = object(v, path)?;
    if let Some(name) = g.get("name") {
        let n = string(name, "/group/name")?;
        return by_name(n).ok_or_else(|| err("/group/name", format!("unknown catalog group `{n}`")));
    }
    let gens = array(field(g, "permutation_generators", path)?, "/group/permutation_generators")?;
    let perms = gens
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let pp = format!("/group/permutation_generators/{i}");
            array(p, &pp)?.iter().enumerate().map(|(j, x)| small(x, &format!("{pp}/{j}"))).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_permutations(&perms).map_err(|e| match e {
        Error::Input { path, message } => err(&format!("/group/{}", path.replace('[', "/").replace(']', "")), message),
        Error::Structural(m) => err("/group/permutation_generators", m),
        other => other,
    })
}

fn parse_subgroup(g: &FiniteGroup, v: &Value, path: &str) -> Result<Subgroup> {
    let words = array(v, path)?;
    let gens = words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let p = format!("{path}/{i}");
            g.parse_word(string(w, &p)?).map_err(|e| err(&p, e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subgroup::generated_by(g, &gens))
}

impl Problem {
    pub fn parse(text: &str) -> Result<Problem> {
        let root: Value = serde_json::from_str(text).map_err(|e| err("/", format!("invalid JSON: {e}")))?;
        let raw = object(&root, "/")?.clone();
        let version = field(&raw, "schema_version", "/")?;
        if version.as_u64() != Some(SCHEMA_VERSION) {
            return Err(err("/schema_version", format!("unsupported schema version {version}, expected {SCHEMA_VERSION}")));
        }
        let group = parse_group(field(&raw, "group", "/")?)?;
        let (datum, selection) = match raw.get("local_datum") {
            None => (LocalDatum::unramified(&group), PlaceSelection::empty()),
            Some(v) => parse_datum(&group, v)?,
        };
        Ok(Problem { group, raw, datum, selection })
    }

    fn entry(&self, section: &str, name: &str) -> Result<(&Map<String, Value>, String)> {
        let path = format!("/{section}/{name}");
        let sec = object(field(&self.raw, section, "/")?, &format!("/{section}"))?;
        let v = sec.get(name).ok_or_else(|| err(&format!("/{section}"), format!("no entry named `{name}`")))?;
        Ok((object(v, &path)?, path))
    }

    pub fn module(&self, name: &str) -> Result<GModule> {
        let (m, path) = self.entry("modules", name)?;
        let g = &self.group;
        if let Some(b) = m.get("builtin") {
            let kind = string(b, &format!("{path}/builtin"))?;
            let sub = |key: &str| -> Result<Subgroup> {
                match m.get(key) {
                    Some(v) => parse_subgroup(g, v, &format!("{path}/{key}")),
                    None => Ok(g.trivial_subgroup()),
                }
            };
            return match kind {
                "trivial" => Ok(trivial_module(g, m.get("rank").map(|r| small(r, &format!("{path}/rank"))).transpose()?.unwrap_or(1))),
                "sign" => {
                    let p = format!("{path}/signs");
                    let signs = array(field(m, "signs", &path)?, &p)?
                        .iter()
                        .enumerate()
                        .map(|(i, s)| integer(s, &format!("{p}/{i}")).map(|x| x.to_string().parse::<i64>().unwrap_or(0)))
                        .collect::<Result<Vec<_>>>()?;
                    at(&p, sign_module(g, &signs))
                }
                "regular" | "coset" => Ok(self.permutation_module(name)?.into_module()),
                "augmentation_ideal" => Ok(augmentation_ideal(g, &sub("subgroup")?)),
                "augmentation_quotient" => Ok(augmentation_quotient(g, &sub("subgroup")?)),
                other => Err(err(&format!("{path}/builtin"), format!("unknown builtin `{other}`"))),
            };
        }
        let n = small(field(m, "rank", &path)?, &format!("{path}/rank"))?;
        let relations = match m.get("relations") {
            Some(v) => matrix(v, &format!("{path}/relations"), Some(n))?,
            None => IntMatrix::zeros(0, n),
        };
        let underlying = at(&format!("{path}/relations"), PresentedAbelianGroup::new(n, &relations))?;
        let action_path = format!("{path}/action");
        let action = object(field(m, "action", &path)?, &action_path)?;
        let k = g.generators().len();
        if let Some(extra) = action.keys().find(|key| !(0..k).any(|i| **key == format!("s{i}"))) {
            return Err(err(&action_path, format!("`{extra}` is not a generator name (s0..s{})", k.saturating_sub(1))));
        }
        let mats = (0..k)
            .map(|i| {
                let key = format!("s{i}");
                square(field(action, &key, &action_path)?, &format!("{action_path}/{key}"), n)
            })
            .collect::<Result<Vec<_>>>()?;
        at(&action_path, GModule::new(g, underlying, mats))
    }

    /// A module that must carry a permutation basis: `regular`, `coset`, or
    /// explicit permutation matrices without relations.
    pub fn permutation_module(&self, name: &str) -> Result<PermutationModule> {
        let (m, path) = self.entry("modules", name)?;
        let g = &self.group;
        match m.get("builtin").and_then(Value::as_str) {
            Some("regular") => return Ok(regular_module(g)),
            Some("coset") => {
                let h = parse_subgroup(g, field(m, "subgroup", &path)?, &format!("{path}/subgroup"))?;
                return Ok(permutation_module(g, &h));
            }
            Some("trivial") => {
                let r = m.get("rank").map(|r| small(r, &format!("{path}/rank"))).transpose()?.unwrap_or(1);
                return at(&path, PermutationModule::from_generator_permutations(g, &vec![(0..r).collect(); g.generators().len()]));
            }
            _ => {}
        }
        let module = self.module(name)?;
        if module.underlying().relations().rows() > 0 {
            return Err(err(&path, "a permutation module has no relations"));
        }
        let perms = module
            .action()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                (0..a.cols())
                    .map(|j| {
                        let col = a.column(j);
                        let ones: Vec<usize> = (0..col.len()).filter(|&r| col[r] == Int::from(1u8)).collect();
                        let nonzero = col.iter().filter(|x| **x != Int::from(0u8)).count();
                        if ones.len() == 1 && nonzero == 1 {
                            Ok(ones[0])
                        } else {
                            Err(err(&format!("{path}/action/s{i}"), "not a permutation matrix"))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        at(&path, PermutationModule::from_generator_permutations(g, &perms))
    }

    fn map_between(&self, m: &Map<String, Value>, path: &str, src: &GModule, dst: &GModule, key: &str) -> Result<GModuleHom> {
        let p = format!("{path}/{key}");
        let mat = matrix(field(m, key, path)?, &p, Some(src.rank()))?;
        if mat.rows() != dst.rank() {
            return Err(err(&p, format!("expected {} rows, found {}", dst.rank(), mat.rows())));
        }
        at(&p, GModuleHom::new(src.clone(), dst.clone(), mat))
    }

    pub fn homspace(&self, name: &str) -> Result<HomSpaceDatum> {
        let (m, path) = self.entry("homspaces", name)?;
        let g_hat = self.permutation_module(string(field(m, "G_hat", &path)?, &format!("{path}/G_hat"))?)?;
        let h_hat = self.module(string(field(m, "H_hat", &path)?, &format!("{path}/H_hat"))?)?;
        let res = self.map_between(m, &path, g_hat.module(), &h_hat, "res")?;
        at(&path, HomSpaceDatum::new(self.datum.clone(), g_hat, res))
    }

    pub fn cochar(&self, name: &str) -> Result<CocharacterDatum> {
        let (m, path) = self.entry("cochars", name)?;
        let x = self.module(string(field(m, "X_star", &path)?, &format!("{path}/X_star"))?)?;
        let p = format!("{path}/coroot_inclusion");
        let rows = array(field(m, "coroot_inclusion", &path)?, &p)?;
        if rows.is_empty() || rows.iter().all(|r| r.as_array().is_some_and(Vec::is_empty)) {
            return at(&p, CocharacterDatum::torus(&x));
        }
        let c = matrix(&Value::Array(rows.clone()), &p, None)?;
        at(&p, CocharacterDatum::from_coroot_matrix(&x, &c))
    }

    pub fn isogeny(&self, name: &str) -> Result<IsogenyDatum> {
        let (m, path) = self.entry("isogenies", name)?;
        let src = self.module(string(field(m, "source", &path)?, &format!("{path}/source"))?)?;
        let dst = self.module(string(field(m, "target", &path)?, &format!("{path}/target"))?)?;
        Ok(IsogenyDatum::new(self.map_between(m, &path, &src, &dst, "matrix")?))
    }

    /// The file's `S`, replaced by `names` when given on the command line.
    pub fn selection(&self, names: Option<&[String]>) -> Result<PlaceSelection> {
        let Some(names) = names else { return Ok(self.selection.clone()) };
        let known: BTreeSet<String> = self.datum.place_names().into_iter().collect();
        if let Some(n) = names.iter().find(|n| !known.contains(*n)) {
            return Err(Error::input("--S", format!("unknown place `{n}`")));
        }
        Ok(PlaceSelection::of(names.iter().cloned()))
    }
}

fn parse_datum(g: &FiniteGroup, v: &Value) -> Result<(LocalDatum, PlaceSelection)> {
    let path = "/local_datum";
    let d = object(v, path)?;
    let mut places = Vec::new();
    if let Some(sp) = d.get("special_places") {
        for (i, p) in array(sp, "/local_datum/special_places")?.iter().enumerate() {
            let pp = format!("/local_datum/special_places/{i}");
            let o = object(p, &pp)?;
            let name = string(field(o, "name", &pp)?, &format!("{pp}/name"))?.to_string();
            let h = parse_subgroup(g, field(o, "decomposition", &pp)?, &format!("{pp}/decomposition"))?;
            places.push((name, h));
        }
    }
    let datum = at(path, LocalDatum::new(g, places)).map_err(|e| match e {
        Error::Input { path: p, message } if p.starts_with("special_places") => err("/local_datum/special_places", message),
        other => other,
    })?;
    let names: BTreeSet<String> = datum.place_names().into_iter().collect();
    let mut s = Vec::new();
    if let Some(sv) = d.get("S") {
        for (i, n) in array(sv, "/local_datum/S")?.iter().enumerate() {
            let p = format!("/local_datum/S/{i}");
            let n = string(n, &p)?;
            if !names.contains(n) {
                return Err(err(&p, format!("unknown place `{n}`")));
            }
            s.push(n.to_string());
        }
    }
    Ok((datum, PlaceSelection::of(s)))
}
