//! The bundled rule manifest: atom bounds and the label of every rule.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::pointclass::Pointclass;

pub const MANIFEST_JSON: &str = include_str!("../../data/rules.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomEntry {
    pub eq: Pointclass,
    pub dom: Pointclass,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RuleEntry {
    pub rule: String,
    pub cite: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub atoms: BTreeMap<String, AtomEntry>,
    pub rules: Vec<RuleEntry>,
    pub lower: Vec<RuleEntry>,
    pub pointclass: Vec<RuleEntry>,
}

pub fn manifest() -> &'static Manifest {
    static M: OnceLock<Manifest> = OnceLock::new();
    M.get_or_init(|| serde_json::from_str(MANIFEST_JSON).expect("bundled rules.json parses"))
}

/// Rules a trace node may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Atom,
    Sugar,
    Exp,
    RkOne,
    Prod,
    Coprod,
    ProdOmega,
    CoprodOmega,
    FamilyUniform,
    FamilyCofinal,
    Below,
    Equalizer,
    Coequalizer,
    CoequalizerTrivial,
    T0,
    Retract,
    HomeoNormalize,
}

impl Rule {
    pub const ALL: [Rule; 17] = [
        Rule::Atom,
        Rule::Sugar,
        Rule::Exp,
        Rule::RkOne,
        Rule::Prod,
        Rule::Coprod,
        Rule::ProdOmega,
        Rule::CoprodOmega,
        Rule::FamilyUniform,
        Rule::FamilyCofinal,
        Rule::Below,
        Rule::Equalizer,
        Rule::Coequalizer,
        Rule::CoequalizerTrivial,
        Rule::T0,
        Rule::Retract,
        Rule::HomeoNormalize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Atom => "atom",
            Rule::Sugar => "sugar",
            Rule::Exp => "exp",
            Rule::RkOne => "rk-one",
            Rule::Prod => "prod",
            Rule::Coprod => "coprod",
            Rule::ProdOmega => "prod-omega",
            Rule::CoprodOmega => "coprod-omega",
            Rule::FamilyUniform => "family-uniform",
            Rule::FamilyCofinal => "family-cofinal",
            Rule::Below => "below",
            Rule::Equalizer => "equalizer",
            Rule::Coequalizer => "coequalizer",
            Rule::CoequalizerTrivial => "coequalizer-trivial",
            Rule::T0 => "t0",
            Rule::Retract => "retract",
            Rule::HomeoNormalize => "homeo-normalize",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn cite(self) -> &'static str {
        lookup(&manifest().rules, self.name()).expect("every rule has a manifest entry")
    }
}

fn lookup<'a>(entries: &'a [RuleEntry], rule: &str) -> Option<&'a str> {
    entries.iter().find(|e| e.rule == rule).map(|e| e.cite.as_str())
}

pub fn lower_cite(rule: &str) -> Option<&'static str> {
    lookup(&manifest().lower, rule)
}

/// Atom bounds keyed by atom name (`omega`, `baire`, `sierpinski`, `reals`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AtomTable(pub BTreeMap<String, AtomEntry>);

impl AtomTable {
    pub fn standard() -> Self {
        AtomTable(manifest().atoms.clone())
    }

    pub fn get(&self, atom: &str) -> Option<&AtomEntry> {
        self.0.get(atom)
    }

    /// A copy with one entry replaced.
    pub fn with(&self, atom: &str, eq: Pointclass, dom: Pointclass) -> Self {
        let mut t = self.clone();
        t.0.insert(atom.to_string(), AtomEntry { eq, dom });
        t
    }
}
