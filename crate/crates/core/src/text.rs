//! Line-based text formats.
//!
//! Every format starts with a header line naming the kind (`space`, `poset`,
//! `lattice`, `map`, `model`). One declaration per line; `#` starts a comment.
//! Errors carry the 1-based line number of the offending declaration.

use std::collections::HashSet;

use crate::cases::{HomRow, LedgerEntry};
use crate::error::{Error, Result};
use crate::galois::FrameMap;
use crate::label::check_label;
use crate::lattice::FiniteLattice;
use crate::model::{FormalObject, SupportModel};
use crate::order::{FiniteSpace, Poset};
use crate::set::PointSet;

struct Line<'a> {
    no: usize,
    words: Vec<&'a str>,
    /// Text after the keyword, comment stripped.
    rest: &'a str,
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            return None;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        let rest = body[words[0].len()..].trim();
        Some(Line {
            no: i + 1,
            words,
            rest,
        })
    })
}

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    }
}

fn expect_header<'a>(it: &mut impl Iterator<Item = Line<'a>>, kind: &str) -> Result<()> {
    match it.next() {
        Some(l) if l.words == [kind] => Ok(()),
        Some(l) => Err(Error::parse(l.no, format!("expected `{kind}` header"))),
        None => Err(Error::parse(
            1,
            format!("empty input, expected `{kind}` header"),
        )),
    }
}

fn arity(l: &Line, n: usize) -> Result<()> {
    if l.words.len() != n + 1 {
        return Err(Error::parse(
            l.no,
            format!("`{}` takes {} argument(s)", l.words[0], n),
        ));
    }
    Ok(())
}

fn unknown(l: &Line) -> Error {
    Error::parse(l.no, format!("unknown declaration `{}`", l.words[0]))
}

/// Points and opens, shared by the space and model formats.
#[derive(Default)]
struct SpaceBuilder {
    points: Vec<String>,
    opens: Vec<PointSet>,
}

impl SpaceBuilder {
    fn handle(&mut self, l: &Line) -> Result<bool> {
        match l.words[0] {
            "point" => {
                arity(l, 1)?;
                let p = l.words[1];
                check_label(p).map_err(|e| at(l.no, e))?;
                if self.points.iter().any(|q| q == p) {
                    return Err(Error::parse(l.no, format!("duplicate point `{p}`")));
                }
                if self.points.len() == crate::set::MAX_POINTS {
                    return Err(at(l.no, Error::TooManyPoints(self.points.len() + 1)));
                }
                self.points.push(p.to_string());
            }
            "open" => {
                let s = self.subset(l.no, &l.words[1..])?;
                self.opens.push(s);
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn subset(&self, line: usize, labels: &[&str]) -> Result<PointSet> {
        let mut s = PointSet::EMPTY;
        for &w in labels {
            let i = self
                .points
                .iter()
                .position(|p| p == w)
                .ok_or_else(|| at(line, Error::UnknownLabel(w.to_string())))?;
            s = s.with(i);
        }
        Ok(s)
    }

    fn finish(self, header_line: usize) -> Result<FiniteSpace> {
        FiniteSpace::new(self.points, self.opens).map_err(|e| at(header_line, e))
    }
}

pub fn parse_space(text: &str) -> Result<FiniteSpace> {
    let mut it = lines(text);
    expect_header(&mut it, "space")?;
    let mut b = SpaceBuilder::default();
    let mut last = 1;
    for l in it {
        last = l.no;
        if !b.handle(&l)? {
            return Err(unknown(&l));
        }
    }
    b.finish(last)
}

pub fn print_space(space: &FiniteSpace) -> String {
    let mut out = String::from("space\n");
    for p in space.points() {
        out.push_str(&format!("point {p}\n"));
    }
    for &u in space.opens() {
        let labels = space.labels_of(u);
        if labels.is_empty() {
            out.push_str("open\n");
        } else {
            out.push_str(&format!("open {}\n", labels.join(" ")));
        }
    }
    out
}

/// A generating family: `subbasis` header, `point <label>`, `set <label>*`.
pub fn parse_subbasis(text: &str) -> Result<(Vec<String>, Vec<PointSet>)> {
    let mut it = lines(text);
    expect_header(&mut it, "subbasis")?;
    let mut b = SpaceBuilder::default();
    let mut sets = Vec::new();
    for l in it {
        match l.words[0] {
            "point" => {
                b.handle(&l)?;
            }
            "set" => sets.push(b.subset(l.no, &l.words[1..])?),
            _ => return Err(unknown(&l)),
        }
    }
    Ok((b.points, sets))
}

/// Elements and `le` pairs, with antisymmetry checked as each pair arrives.
fn parse_order(text: &str, kind: &str) -> Result<Poset> {
    let mut it = lines(text);
    expect_header(&mut it, kind)?;
    let mut labels: Vec<String> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut last = 1;
    for l in it {
        last = l.no;
        match l.words[0] {
            "element" => {
                arity(&l, 1)?;
                check_label(l.words[1]).map_err(|e| at(l.no, e))?;
                if labels.iter().any(|x| x == l.words[1]) {
                    return Err(Error::parse(
                        l.no,
                        format!("duplicate element `{}`", l.words[1]),
                    ));
                }
                if labels.len() == crate::set::MAX_POINTS {
                    return Err(at(l.no, Error::TooManyPoints(labels.len() + 1)));
                }
                labels.push(l.words[1].to_string());
            }
            "le" => {
                arity(&l, 2)?;
                let idx = |w: &str| {
                    labels
                        .iter()
                        .position(|x| x == w)
                        .ok_or_else(|| at(l.no, Error::UnknownLabel(w.to_string())))
                };
                let (a, b) = (idx(l.words[1])?, idx(l.words[2])?);
                if a != b && reaches(&pairs, b, a) {
                    return Err(at(
                        l.no,
                        Error::NotPartialOrder(format!(
                            "antisymmetry fails for `{}` and `{}`",
                            l.words[1], l.words[2]
                        )),
                    ));
                }
                pairs.push((a, b));
            }
            _ => return Err(unknown(&l)),
        }
    }
    Poset::from_pairs(labels, &pairs).map_err(|e| at(last, e))
}

fn reaches(pairs: &[(usize, usize)], from: usize, to: usize) -> bool {
    let mut seen = HashSet::from([from]);
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for &(a, b) in pairs {
            if a == x && seen.insert(b) {
                stack.push(b);
            }
        }
    }
    false
}

fn print_order(p: &Poset, kind: &str) -> String {
    let mut out = format!("{kind}\n");
    for l in p.labels() {
        out.push_str(&format!("element {l}\n"));
    }
    for (a, b) in p.covers() {
        out.push_str(&format!("le {} {}\n", p.label(a), p.label(b)));
    }
    out
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    parse_order(text, "poset")
}

pub fn print_poset(p: &Poset) -> String {
    print_order(p, "poset")
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice> {
    let p = parse_order(text, "lattice")?;
    let last = text.lines().count().max(1);
    FiniteLattice::from_poset(p).map_err(|e| at(last, e))
}

pub fn print_lattice(l: &FiniteLattice) -> String {
    print_order(l.order(), "lattice")
}

/// A map file names its lattices by path; `load` resolves them.
pub fn parse_map(
    text: &str,
    mut load: impl FnMut(&str) -> Result<FiniteLattice>,
) -> Result<FrameMap> {
    let mut it = lines(text);
    expect_header(&mut it, "map")?;
    let mut from: Option<FiniteLattice> = None;
    let mut to: Option<FiniteLattice> = None;
    let mut sends: Vec<(String, String, usize)> = Vec::new();
    for l in it {
        match l.words[0] {
            "from" | "to" => {
                if l.rest.is_empty() {
                    return Err(Error::parse(l.no, format!("`{}` needs a path", l.words[0])));
                }
                let slot = if l.words[0] == "from" {
                    &mut from
                } else {
                    &mut to
                };
                if slot.is_some() {
                    return Err(Error::parse(l.no, format!("repeated `{}`", l.words[0])));
                }
                *slot = Some(load(l.rest).map_err(|e| at(l.no, e))?);
            }
            "send" => {
                arity(&l, 2)?;
                sends.push((l.words[1].to_string(), l.words[2].to_string(), l.no));
            }
            _ => return Err(unknown(&l)),
        }
    }
    let end = text.lines().count().max(1);
    let source = from.ok_or_else(|| Error::parse(end, "missing `from`"))?;
    let target = to.ok_or_else(|| Error::parse(end, "missing `to`"))?;
    let mut mapping = vec![usize::MAX; source.len()];
    for (a, b, no) in &sends {
        let x = source.index_of(a).map_err(|e| at(*no, e))?;
        let y = target.index_of(b).map_err(|e| at(*no, e))?;
        if mapping[x] != usize::MAX {
            return Err(Error::parse(*no, format!("`{a}` is sent twice")));
        }
        mapping[x] = y;
    }
    if let Some(x) = mapping.iter().position(|&y| y == usize::MAX) {
        return Err(Error::parse(
            end,
            format!("`{}` is not sent anywhere", source.label(x)),
        ));
    }
    FrameMap::new(source, target, mapping).map_err(|e| at(end, e))
}

pub fn print_map(map: &FrameMap, from: &str, to: &str) -> String {
    let mut out = format!("map\nfrom {from}\nto {to}\n");
    for (x, &y) in map.mapping().iter().enumerate() {
        out.push_str(&format!(
            "send {} {}\n",
            map.source().label(x),
            map.target().label(y)
        ));
    }
    out
}

/// A parsed model file: the model plus optional comparison tables and ledger.
#[derive(Clone, Debug)]
pub struct ModelFile {
    pub model: SupportModel,
    pub hom: Vec<HomRow>,
    pub ledger: Vec<LedgerEntry>,
}

/// Parse a model. The space is either embedded (`point`/`open` lines, after
/// an optional bare `space` line) or referenced by `space <path>`. Further
/// lines: `object <name> supp <label>* compact=<bool>`, `unit <name>`,
/// `hom <h> chi <point> phi <point>`, `expect <op> <args>* = <literal>`,
/// `unasserted <op> <args>*`.
pub fn parse_model(
    text: &str,
    load_space: impl FnMut(&str) -> Result<FiniteSpace>,
) -> Result<ModelFile> {
    parse_model_impl(text, load_space, true)
}

fn parse_model_impl(
    text: &str,
    mut load_space: impl FnMut(&str) -> Result<FiniteSpace>,
    validate: bool,
) -> Result<ModelFile> {
    let mut it = lines(text);
    expect_header(&mut it, "model")?;
    let mut embedded = SpaceBuilder::default();
    let mut referenced: Option<FiniteSpace> = None;
    let mut space: Option<FiniteSpace> = None;
    let mut objects: Vec<FormalObject> = Vec::new();
    let mut unit: Option<(String, usize)> = None;
    let mut hom = Vec::new();
    let mut ledger = Vec::new();
    let mut last = 1;

    for l in it {
        last = l.no;
        let kw = l.words[0];
        if kw == "point" || kw == "open" {
            if space.is_some() || referenced.is_some() {
                return Err(Error::parse(
                    l.no,
                    format!("`{kw}` after the space is fixed"),
                ));
            }
            embedded.handle(&l)?;
            continue;
        }
        match kw {
            "space" => {
                if !l.rest.is_empty() {
                    if referenced.is_some() || !embedded.points.is_empty() {
                        return Err(Error::parse(l.no, "space given twice"));
                    }
                    referenced = Some(load_space(l.rest).map_err(|e| at(l.no, e))?);
                }
            }
            "object" => {
                let s = fix_space(&mut space, &mut embedded, &mut referenced, l.no)?;
                objects.push(parse_object(&l, s)?);
            }
            "unit" => {
                arity(&l, 1)?;
                if unit.is_some() {
                    return Err(Error::parse(l.no, "repeated `unit`"));
                }
                unit = Some((l.words[1].to_string(), l.no));
            }
            "hom" => {
                if l.words.len() != 6 || l.words[2] != "chi" || l.words[4] != "phi" {
                    return Err(Error::parse(
                        l.no,
                        "expected `hom <h> chi <point> phi <point>`",
                    ));
                }
                check_label(l.words[1]).map_err(|e| at(l.no, e))?;
                hom.push(HomRow {
                    point: l.words[1].to_string(),
                    chi: l.words[3].to_string(),
                    phi: l.words[5].to_string(),
                });
            }
            "expect" => {
                let (lhs, want) = l.rest.split_once('=').ok_or_else(|| {
                    Error::parse(l.no, "expected `expect <op> <args> = <literal>`")
                })?;
                let mut words = lhs.split_whitespace();
                let op = words
                    .next()
                    .ok_or_else(|| Error::parse(l.no, "missing operation"))?;
                let want = want.trim();
                if want.is_empty() || want.contains(char::is_whitespace) {
                    return Err(Error::parse(
                        l.no,
                        "literal must be a single nonempty token",
                    ));
                }
                ledger.push(LedgerEntry::Expect {
                    op: op.to_string(),
                    args: words.map(|s| s.to_string()).collect(),
                    want: want.to_string(),
                });
            }
            "unasserted" => {
                if l.words.len() < 2 {
                    return Err(Error::parse(l.no, "missing operation"));
                }
                ledger.push(LedgerEntry::Unasserted {
                    op: l.words[1].to_string(),
                    args: l.words[2..].iter().map(|s| s.to_string()).collect(),
                });
            }
            _ => return Err(unknown(&l)),
        }
    }
    let space = match space {
        Some(s) => s,
        None => fix_space(&mut space, &mut embedded, &mut referenced, last)?.clone(),
    };
    let (unit, unit_line) = unit.ok_or_else(|| Error::parse(last, "missing `unit`"))?;
    let model = SupportModel::from_parts(space, objects, &unit).map_err(|e| at(unit_line, e))?;
    if let (true, Err(v)) = (validate, model.validate()) {
        let msgs: Vec<String> = v.iter().map(|v| v.to_string()).collect();
        return Err(Error::Precondition(format!(
            "invalid model: {}",
            msgs.join("; ")
        )));
    }
    Ok(ModelFile { model, hom, ledger })
}

/// Parse a model file without enforcing model invariants, so a checker can
/// report every violation.
pub fn parse_model_unchecked(
    text: &str,
    load_space: impl FnMut(&str) -> Result<FiniteSpace>,
) -> Result<ModelFile> {
    parse_model_impl(text, load_space, false)
}

fn fix_space<'s>(
    space: &'s mut Option<FiniteSpace>,
    embedded: &mut SpaceBuilder,
    referenced: &mut Option<FiniteSpace>,
    line: usize,
) -> Result<&'s FiniteSpace> {
    if space.is_none() {
        let s = match referenced.take() {
            Some(s) => s,
            None => {
                if embedded.points.is_empty() {
                    return Err(Error::parse(line, "no space declared"));
                }
                std::mem::take(embedded).finish(line)?
            }
        };
        *space = Some(s);
    }
    Ok(space.as_ref().expect("just set"))
}

fn parse_object(l: &Line, space: &FiniteSpace) -> Result<FormalObject> {
    let w = &l.words;
    let usage = || {
        Error::parse(
            l.no,
            "expected `object <name> supp <label>* compact=<true|false>`",
        )
    };
    if w.len() < 4 || w[2] != "supp" {
        return Err(usage());
    }
    check_label(w[1]).map_err(|e| at(l.no, e))?;
    let compact = match w[w.len() - 1] {
        "compact=true" => true,
        "compact=false" => false,
        _ => return Err(usage()),
    };
    let support = space.subset(&w[3..w.len() - 1]).map_err(|e| at(l.no, e))?;
    Ok(FormalObject::new(w[1], support, compact))
}

/// Print with the space embedded.
pub fn print_model(file: &ModelFile) -> String {
    let m = &file.model;
    let space = print_space(m.space());
    let mut out = String::from("model\n");
    out.push_str(&space);
    for o in m.objects() {
        let labels = m.space().labels_of(o.support);
        let mut line = format!("object {} supp", o.name);
        for l in labels {
            line.push(' ');
            line.push_str(l);
        }
        out.push_str(&format!("{line} compact={}\n", o.compact));
    }
    out.push_str(&format!("unit {}\n", m.unit_name()));
    for r in &file.hom {
        out.push_str(&format!("hom {} chi {} phi {}\n", r.point, r.chi, r.phi));
    }
    for e in &file.ledger {
        out.push_str(&format!("{e}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_files(path: &str) -> Result<FiniteSpace> {
        Err(Error::Precondition(format!("no file `{path}`")))
    }

    const VALUATION: &str = "\
model
space
point 0
point P
point Q
open
open 0
open 0 Q
open 0 P
open 0 P Q
object A supp 0 P Q compact=true
object A_a supp 0 P compact=true   # compact quotient
object k supp P compact=false
unit A
expect model.sSupp k = {0,P}
unasserted model.maximal_localizing Q k
";

    #[test]
    fn space_round_trip() {
        let s = parse_space("space\npoint a\npoint b\nopen\nopen a\nopen a b\n").unwrap();
        assert_eq!(s.opens().len(), 3);
        assert_eq!(parse_space(&print_space(&s)).unwrap(), s);
    }

    #[test]
    fn unknown_label_in_open() {
        let err = parse_space("space\npoint x\nopen x y\n").unwrap_err();
        assert_eq!(err, Error::parse(3, "unknown label `y`"));
    }

    #[test]
    fn non_topology_reported() {
        let err = parse_space("space\npoint a\npoint b\nopen a\n").unwrap_err();
        assert!(err.to_string().contains("not a topology"), "{err}");
    }

    #[test]
    fn subbasis() {
        let (points, sets) = parse_subbasis("subbasis\npoint a\npoint b\nset a\nset\n").unwrap();
        assert_eq!(points, vec!["a", "b"]);
        assert_eq!(sets, vec![PointSet::singleton(0), PointSet::EMPTY]);
        assert!(parse_subbasis("subbasis\nset a\n").is_err());
    }

    #[test]
    fn header_required() {
        assert!(matches!(
            parse_space("point a\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_space(""), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn antisymmetry_error_points_at_second_pair() {
        let text = "lattice\nelement a\nelement b\nle a b\nle b a\n";
        let err = parse_lattice(text).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 5);
                assert!(message.contains("antisymmetry"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lattice_round_trip() {
        let text =
            "lattice\nelement 0\nelement a\nelement b\nelement 1\nle 0 a\nle 0 b\nle a 1\nle b 1\n";
        let l = parse_lattice(text).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(
            parse_lattice(&print_lattice(&l)).unwrap().order(),
            l.order()
        );
    }

    #[test]
    fn poset_round_trip() {
        let p = Poset::from_labeled_pairs(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(parse_poset(&print_poset(&p)).unwrap(), p);
    }

    #[test]
    fn map_parsing() {
        let chain = "lattice\nelement 0\nelement 1\nle 0 1\n";
        let load = |_: &str| parse_lattice(chain);
        let m = parse_map("map\nfrom a.lat\nto b.lat\nsend 0 0\nsend 1 1\n", load).unwrap();
        assert!(m.validate().is_ok());
        let again = parse_map(&print_map(&m, "a.lat", "b.lat"), load).unwrap();
        assert_eq!(again.mapping(), m.mapping());

        let err = parse_map("map\nfrom a\nto b\nsend 0 0\n", load).unwrap_err();
        assert!(err.to_string().contains("`1` is not sent"));
        let err = parse_map("map\nfrom a\nto b\nsend 0 x\nsend 1 1\n", load).unwrap_err();
        assert_eq!(err, Error::parse(4, "unknown label `x`"));
    }

    #[test]
    fn model_round_trip() {
        let f = parse_model(VALUATION, no_files).unwrap();
        assert_eq!(f.model.objects().len(), 3);
        assert_eq!(f.ledger.len(), 2);
        let again = parse_model(&print_model(&f), no_files).unwrap();
        assert_eq!(again.model, f.model);
        assert_eq!(again.ledger, f.ledger);
    }

    #[test]
    fn model_with_referenced_space() {
        let text = "model\nspace s.space\nobject R supp a compact=true\nunit R\n";
        let f = parse_model(text, |_| parse_space("space\npoint a\nopen\nopen a\n")).unwrap();
        assert_eq!(f.model.space().len(), 1);
        let err = parse_model(text, no_files).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn model_errors() {
        let bad_obj = VALUATION.replace("supp P compact=false", "supp X compact=false");
        assert!(matches!(
            parse_model(&bad_obj, no_files),
            Err(Error::Parse { line: 13, .. })
        ));
        let not_open = VALUATION.replace("supp P compact=false", "supp P compact=true");
        let err = parse_model(&not_open, no_files).unwrap_err();
        assert!(err.to_string().contains("compact object `k`"), "{err}");
        let no_unit = VALUATION.replace("unit A\n", "");
        assert!(parse_model(&no_unit, no_files)
            .unwrap_err()
            .to_string()
            .contains("missing `unit`"));
    }
}
