//! Semantic matching of requested concepts against enriched service scripts.
//!
//! A concept matches a service keyword in one of two ways:
//!
//! * **direct**: the two words are close in edit distance
//!   (`1 - levenshtein / max_len` at or above [`MatchConfig::theta_map`]);
//! * **expansion**: the concept occurs among the content words of one of the
//!   keyword's stored definitions (or the keyword occurs in the requester's
//!   own desired definition). Expansion scores [`MatchConfig::w_exp`].
//!
//! When the requester supplies the definition it has in mind, the winning
//! keyword's stored definitions are compared with it by word-set overlap and
//! the result is blended in with weight `1 - alpha`. Services are ranked by
//! the mean of their per-concept scores.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metadata::{KeywordAnnotation, MetadataScript};
use crate::tokenizer::tokenize;

/// Words ignored when comparing definitions.
pub const STOPWORDS: &[&str] = &[
    "a", "an", "the", "of", "for", "and", "or", "to", "in", "on", "at", "is", "are", "etc", "your",
    "i", "can", "that", "have", "their", "with", "by", "it",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("invalid request: {0}")]
    InvalidRequest(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MatchConfig {
    /// Name score awarded for a match through a stored definition.
    pub w_exp: f64,
    /// Weight of the name score against the definition score.
    pub alpha: f64,
    /// Minimum name score for two terms to be considered the same concept.
    pub theta_map: f64,
}

impl MatchConfig {
    pub const DEFAULT: MatchConfig = MatchConfig {
        w_exp: 0.9,
        alpha: 0.5,
        theta_map: 0.7,
    };
}

impl Default for MatchConfig {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConceptRequirement {
    pub concept: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub desired_definition: Option<String>,
}

impl ConceptRequirement {
    pub fn new(concept: &str, desired_definition: Option<&str>) -> Self {
        Self {
            concept: concept.trim().to_lowercase(),
            desired_definition: desired_definition
                .filter(|d| !d.trim().is_empty())
                .map(str::to_string),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchRequest {
    #[serde(rename = "concepts")]
    pub requirements: Vec<ConceptRequirement>,
}

impl MatchRequest {
    /// Normalizes concepts to lowercase and checks the request is non-empty
    /// with unique concepts.
    pub fn new(requirements: Vec<ConceptRequirement>) -> Result<Self, MatchError> {
        let requirements: Vec<ConceptRequirement> = requirements
            .iter()
            .map(|r| ConceptRequirement::new(&r.concept, r.desired_definition.as_deref()))
            .collect();
        if requirements.is_empty() {
            return Err(MatchError::InvalidRequest("request has no concepts".into()));
        }
        let mut seen = BTreeSet::new();
        for r in &requirements {
            if r.concept.is_empty() {
                return Err(MatchError::InvalidRequest("empty concept".into()));
            }
            if !seen.insert(r.concept.as_str()) {
                return Err(MatchError::InvalidRequest(format!(
                    "concept {:?} appears twice",
                    r.concept
                )));
            }
        }
        Ok(Self { requirements })
    }

    /// Parses `{"concepts":[{"concept":..., "desiredDefinition":...}]}`.
    pub fn from_json(text: &str) -> Result<Self, MatchError> {
        if text.trim().is_empty() {
            return Err(MatchError::InvalidRequest("empty request document".into()));
        }
        let raw: MatchRequest =
            serde_json::from_str(text).map_err(|e| MatchError::InvalidRequest(e.to_string()))?;
        Self::new(raw.requirements)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchKind {
    Direct,
    Expansion,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConceptMatch {
    pub concept: String,
    pub matched_keyword: Option<String>,
    pub kind: MatchKind,
    pub name_score: f64,
    pub definition_score: Option<f64>,
    pub combined_score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MatchReport {
    pub service_id: String,
    pub per_concept: Vec<ConceptMatch>,
    pub total_score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConceptMapping {
    pub term_a: String,
    pub term_b: String,
    pub score: f64,
}

/// A service keyword with every annotation stored under that term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateKeyword {
    pub term: String,
    pub annotations: Vec<KeywordAnnotation>,
}

impl CandidateKeyword {
    fn definition_words(&self) -> BTreeSet<String> {
        self.annotations
            .iter()
            .flat_map(|a| definition_tokens(&a.definition))
            .collect()
    }
}

/// Unit-cost edit distance over characters, case-folded.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.to_lowercase().chars().collect();
    let b: Vec<char> = b.to_lowercase().chars().collect();
    let (short, long) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
    let mut prev: Vec<usize> = (0..=short.len()).collect();
    let mut cur = vec![0; short.len() + 1];
    for (j, lc) in long.iter().enumerate() {
        cur[0] = j + 1;
        for (i, sc) in short.iter().enumerate() {
            let substitution = prev[i] + usize::from(sc != lc);
            cur[i + 1] = substitution.min(prev[i + 1] + 1).min(cur[i] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[short.len()]
}

/// `1 - levenshtein(a, b) / max(|a|, |b|)`, with two empty strings scoring 1.
pub fn token_similarity(a: &str, b: &str) -> f64 {
    let len = a
        .to_lowercase()
        .chars()
        .count()
        .max(b.to_lowercase().chars().count());
    if len == 0 {
        return 1.0;
    }
    1.0 - levenshtein(a, b) as f64 / len as f64
}

/// Lowercase content words of a definition: split on anything that is not
/// alphanumeric, drop stopwords and pure numbers.
pub fn definition_tokens(text: &str) -> BTreeSet<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .filter(|w| !STOPWORDS.contains(&w.as_str()))
        .filter(|w| !w.chars().all(|c| c.is_ascii_digit()))
        .collect()
}

/// Jaccard index of the two definitions' content words; 0 when both are empty.
pub fn definition_similarity(a: &str, b: &str) -> f64 {
    let ta = definition_tokens(a);
    let tb = definition_tokens(b);
    let union = ta.union(&tb).count();
    if union == 0 {
        return 0.0;
    }
    ta.intersection(&tb).count() as f64 / union as f64
}

/// Keywords a service offers: every annotated term plus every raw token of
/// its method and parameter names, sorted by term.
pub fn candidate_keywords(script: &MetadataScript) -> Vec<CandidateKeyword> {
    let mut by_term: BTreeMap<String, Vec<KeywordAnnotation>> = BTreeMap::new();
    let add_name = |name: &str, by_term: &mut BTreeMap<String, Vec<KeywordAnnotation>>| {
        let words = match tokenize(name) {
            Ok(tokens) => tokens.into_iter().map(|t| t.into_string()).collect(),
            Err(_) => vec![name.to_lowercase()],
        };
        for w in words {
            if !w.is_empty() && !w.chars().all(|c| c.is_ascii_digit()) {
                by_term.entry(w).or_default();
            }
        }
    };
    for m in &script.methods {
        add_name(&m.name, &mut by_term);
        for p in &m.parameters {
            add_name(&p.name, &mut by_term);
        }
    }
    for (_, k) in script.annotations() {
        by_term.entry(k.term.to_lowercase()).or_default().push(k.clone());
    }
    by_term
        .into_iter()
        .map(|(term, annotations)| CandidateKeyword { term, annotations })
        .collect()
}

struct NameScore {
    score: f64,
    from_expansion: bool,
}

fn name_score(config: &MatchConfig, direct: f64, expansion: bool) -> NameScore {
    let expansion_score = if expansion { config.w_exp } else { 0.0 };
    if expansion_score > direct {
        NameScore {
            score: expansion_score,
            from_expansion: true,
        }
    } else {
        NameScore {
            score: direct,
            from_expansion: false,
        }
    }
}

pub fn concept_match(
    config: &MatchConfig,
    requirement: &ConceptRequirement,
    keywords: &[CandidateKeyword],
) -> ConceptMatch {
    let concept = requirement.concept.to_lowercase();
    let desired_words = requirement
        .desired_definition
        .as_deref()
        .map(definition_tokens)
        .unwrap_or_default();

    let mut best: Option<(&CandidateKeyword, NameScore)> = None;
    for k in keywords {
        let term = k.term.to_lowercase();
        let expansion = k.definition_words().contains(&concept) || desired_words.contains(&term);
        let score = name_score(config, token_similarity(&concept, &term), expansion);
        let better = match &best {
            None => true,
            Some((b, s)) => match score.score.total_cmp(&s.score) {
                Ordering::Greater => true,
                Ordering::Equal => term < b.term.to_lowercase(),
                Ordering::Less => false,
            },
        };
        if better {
            best = Some((k, score));
        }
    }

    let none = |name_score: f64| ConceptMatch {
        concept: concept.clone(),
        matched_keyword: None,
        kind: MatchKind::None,
        name_score,
        definition_score: None,
        combined_score: 0.0,
    };
    let Some((keyword, score)) = best else {
        return none(0.0);
    };
    let kind = if score.from_expansion {
        MatchKind::Expansion
    } else if score.score >= config.theta_map {
        MatchKind::Direct
    } else {
        return none(score.score);
    };

    let definition_score = match &requirement.desired_definition {
        Some(desired) if !keyword.annotations.is_empty() => keyword
            .annotations
            .iter()
            .map(|a| definition_similarity(desired, &a.definition))
            .max_by(f64::total_cmp),
        _ => None,
    };
    let combined_score = match definition_score {
        Some(d) => config.alpha * score.score + (1.0 - config.alpha) * d,
        None => score.score,
    };
    ConceptMatch {
        concept,
        matched_keyword: Some(keyword.term.to_lowercase()),
        kind,
        name_score: score.score,
        definition_score,
        combined_score,
    }
}

/// Cross-pairs of the two scripts' keywords whose name score reaches
/// `theta_map`. Expansion works in both directions.
pub fn map_concepts(
    config: &MatchConfig,
    a: &MetadataScript,
    b: &MetadataScript,
) -> Vec<ConceptMapping> {
    let ka = candidate_keywords(a);
    let kb = candidate_keywords(b);
    let wb: Vec<BTreeSet<String>> = kb.iter().map(CandidateKeyword::definition_words).collect();
    let mut out = Vec::new();
    for x in &ka {
        let wx = x.definition_words();
        for (y, wy) in kb.iter().zip(&wb) {
            let expansion = wy.contains(&x.term) || wx.contains(&y.term);
            let score = name_score(config, token_similarity(&x.term, &y.term), expansion).score;
            if score >= config.theta_map {
                out.push(ConceptMapping {
                    term_a: x.term.clone(),
                    term_b: y.term.clone(),
                    score,
                });
            }
        }
    }
    out.sort_by(|p, q| {
        q.score
            .total_cmp(&p.score)
            .then_with(|| (&p.term_a, &p.term_b).cmp(&(&q.term_a, &q.term_b)))
    });
    out
}

pub fn score_service(
    config: &MatchConfig,
    request: &MatchRequest,
    service_id: &str,
    script: &MetadataScript,
) -> MatchReport {
    let keywords = candidate_keywords(script);
    let per_concept: Vec<ConceptMatch> = request
        .requirements
        .iter()
        .map(|r| concept_match(config, r, &keywords))
        .collect();
    let total_score = if per_concept.is_empty() {
        0.0
    } else {
        per_concept.iter().map(|c| c.combined_score).sum::<f64>() / per_concept.len() as f64
    };
    MatchReport {
        service_id: service_id.to_string(),
        per_concept,
        total_score,
    }
}

/// One report per candidate, best first; equal scores order by service id.
pub fn rank_services(
    config: &MatchConfig,
    request: &MatchRequest,
    candidates: &[(String, MetadataScript)],
) -> Result<Vec<MatchReport>, MatchError> {
    let request = MatchRequest::new(request.requirements.clone())?;
    if candidates.is_empty() {
        return Err(MatchError::InvalidRequest("no candidate services".into()));
    }
    let mut reports: Vec<MatchReport> = candidates
        .iter()
        .map(|(id, script)| score_service(config, &request, id, script))
        .collect();
    reports.sort_by(|a, b| {
        b.total_score
            .total_cmp(&a.total_score)
            .then_with(|| a.service_id.cmp(&b.service_id))
    });
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metadata::{AnnotationTarget, MethodEntry, ParameterEntry};
    use crate::parser::SourceType;
    use proptest::prelude::*;

    const VEHICLE: &str = "a car, lorry, bus, etc., for transporting people or goods on land";
    const ROUTINE: &str = "a routine inspection and maintenance of a vehicle";
    const HELP: &str = "help or advice";
    const CFG: MatchConfig = MatchConfig::DEFAULT;

    /// Exponential recursion over edit scripts.
    fn naive(a: &[char], b: &[char]) -> usize {
        match (a.split_first(), b.split_first()) {
            (None, _) => b.len(),
            (_, None) => a.len(),
            (Some((x, ra)), Some((y, rb))) => {
                let sub = naive(ra, rb) + usize::from(x != y);
                sub.min(naive(ra, b) + 1).min(naive(a, rb) + 1)
            }
        }
    }

    fn naive_str(a: &str, b: &str) -> usize {
        let a: Vec<char> = a.to_lowercase().chars().collect();
        let b: Vec<char> = b.to_lowercase().chars().collect();
        naive(&a, &b)
    }

    fn keyword(term: &str, defs: &[&str]) -> CandidateKeyword {
        CandidateKeyword {
            term: term.into(),
            annotations: defs
                .iter()
                .map(|d| KeywordAnnotation::new(term, "en", "http://d/", d).unwrap())
                .collect(),
        }
    }

    fn script(methods: &[(&str, &[&str])], notes: &[(&str, &str, &str)]) -> MetadataScript {
        let mut s = MetadataScript {
            interface_name: "S".into(),
            source_file: "s.wsdl".into(),
            source_type: SourceType::Wsdl,
            methods: methods
                .iter()
                .map(|(name, params)| {
                    let mut m = MethodEntry::new(*name);
                    m.parameters = params
                        .iter()
                        .map(|p| ParameterEntry {
                            name: p.to_string(),
                            keywords: vec![],
                        })
                        .collect();
                    m
                })
                .collect(),
        };
        for (method, term, def) in notes {
            s.add_annotation(
                &AnnotationTarget::method(*method),
                KeywordAnnotation::new(term, "en", "http://d/", def).unwrap(),
            )
            .unwrap();
        }
        s
    }

    #[test]
    fn levenshtein_examples() {
        assert_eq!(levenshtein("car", "cars"), 1);
        assert_eq!(levenshtein("x", "x"), 0);
        assert_eq!(levenshtein("car", "vehicle"), naive_str("car", "vehicle"));
        assert_eq!(levenshtein("Car", "cAR"), 0);
        assert_eq!(levenshtein("", "abc"), 3);
        assert_eq!(levenshtein("kitten", "sitting"), 3);
    }

    #[test]
    fn token_similarity_examples() {
        assert_eq!(token_similarity("car", "cars"), 0.75);
        assert_eq!(token_similarity("car", "car"), 1.0);
        assert_eq!(token_similarity("", ""), 1.0);
        assert_eq!(token_similarity("", "a"), 0.0);
    }

    #[test]
    fn definition_tokens_examples() {
        let expected: BTreeSet<String> = ["car", "lorry", "bus", "transporting", "people", "goods", "land"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(definition_tokens(VEHICLE), expected);
        assert!(definition_tokens("").is_empty());
        let help: BTreeSet<String> = ["help", "advice"].iter().map(|s| s.to_string()).collect();
        assert_eq!(definition_tokens(HELP), help);
        assert!(definition_tokens("model 42 of 2010").contains("model"));
        assert!(!definition_tokens("model 42 of 2010").contains("42"));
    }

    #[test]
    fn definition_similarity_examples() {
        assert_eq!(definition_similarity(ROUTINE, ROUTINE), 1.0);
        assert_eq!(definition_similarity(ROUTINE, HELP), 0.0);
        assert_eq!(definition_similarity("car wash", "wash car"), 1.0);
        assert_eq!(definition_similarity("", ""), 0.0);
        assert_eq!(definition_similarity("the of", "a an"), 0.0);
    }

    #[test]
    fn expansion_through_stored_definition() {
        let m = concept_match(&CFG, &ConceptRequirement::new("car", None), &[keyword("vehicle", &[VEHICLE])]);
        assert_eq!(m.kind, MatchKind::Expansion);
        assert_eq!(m.name_score, 0.9);
        assert_eq!(m.combined_score, 0.9);
        assert_eq!(m.matched_keyword.as_deref(), Some("vehicle"));
    }

    #[test]
    fn direct_near_match() {
        let m = concept_match(&CFG, &ConceptRequirement::new("car", None), &[keyword("cars", &[])]);
        assert_eq!(m.kind, MatchKind::Direct);
        assert_eq!(m.name_score, 0.75);
        assert_eq!(m.definition_score, None);
    }

    #[test]
    fn wrong_sense_halves_score() {
        let req = ConceptRequirement::new("service", Some(ROUTINE));
        let m = concept_match(&CFG, &req, &[keyword("service", &[HELP])]);
        assert_eq!(m.kind, MatchKind::Direct);
        assert_eq!(m.name_score, 1.0);
        assert_eq!(m.definition_score, Some(0.0));
        assert_eq!(m.combined_score, 0.5);
    }

    #[test]
    fn no_keywords_or_weak_match_is_none() {
        let m = concept_match(&CFG, &ConceptRequirement::new("car", None), &[]);
        assert_eq!(m.kind, MatchKind::None);
        assert_eq!(m.combined_score, 0.0);
        let weak = concept_match(&CFG, &ConceptRequirement::new("car", None), &[keyword("purchase", &[])]);
        assert_eq!(weak.kind, MatchKind::None);
        assert_eq!(weak.combined_score, 0.0);
        assert!(weak.matched_keyword.is_none());
    }

    #[test]
    fn expansion_from_desired_definition() {
        let req = ConceptRequirement::new("auto", Some("a motor vehicle"));
        let m = concept_match(&CFG, &req, &[keyword("vehicle", &[])]);
        assert_eq!(m.kind, MatchKind::Expansion);
        assert_eq!(m.name_score, 0.9);
    }

    #[test]
    fn ties_prefer_smallest_keyword() {
        // "cars" and "carp" are both one edit from "cart"
        let m = concept_match(
            &CFG,
            &ConceptRequirement::new("cart", None),
            &[keyword("cars", &[]), keyword("carp", &[])],
        );
        assert_eq!(m.matched_keyword.as_deref(), Some("carp"));
    }

    #[test]
    fn map_concepts_examples() {
        let a = script(&[("car", &[])], &[]);
        let b = script(&[("getVehicle", &[])], &[("getVehicle", "vehicle", VEHICLE)]);
        let pairs = map_concepts(&CFG, &a, &b);
        assert_eq!(
            pairs,
            vec![ConceptMapping {
                term_a: "car".into(),
                term_b: "vehicle".into(),
                score: 0.9
            }]
        );
        // expansion is symmetric
        let back = map_concepts(&CFG, &b, &a);
        assert_eq!(back[0].term_a, "vehicle");
        assert_eq!(back[0].score, 0.9);

        let c = script(&[("cars", &[])], &[]);
        assert_eq!(map_concepts(&CFG, &a, &c)[0].score, 0.75);

        let d = script(&[("purchase", &[])], &[]);
        assert!(map_concepts(&CFG, &a, &d).is_empty());
    }

    #[test]
    fn map_concepts_sorted() {
        let a = script(&[("carBus", &[])], &[]);
        let b = script(&[("cars", &["bus", "bust"])], &[]);
        let pairs = map_concepts(&CFG, &a, &b);
        let keys: Vec<_> = pairs.iter().map(|p| (p.term_a.as_str(), p.term_b.as_str())).collect();
        assert_eq!(keys, [("bus", "bus"), ("bus", "bust"), ("car", "cars")]);
    }

    #[test]
    fn candidate_keywords_merge_raw_and_annotated() {
        let s = script(&[("serviceVehicle2", &["mot"])], &[("serviceVehicle2", "service", ROUTINE)]);
        let ks = candidate_keywords(&s);
        let terms: Vec<_> = ks.iter().map(|k| k.term.as_str()).collect();
        assert_eq!(terms, ["mot", "service", "vehicle"]);
        assert_eq!(ks[1].annotations.len(), 1);
    }

    #[test]
    fn request_validation() {
        assert!(MatchRequest::new(vec![]).is_err());
        assert!(MatchRequest::from_json("").is_err());
        assert!(MatchRequest::from_json(r#"{"concepts":[]}"#).is_err());
        assert!(MatchRequest::from_json(r#"{"concepts":[{"concept":"Car"},{"concept":"car"}]}"#).is_err());
        let r = MatchRequest::from_json(
            r#"{"concepts":[{"concept":"Car"},{"concept":"service","desiredDefinition":"x"}]}"#,
        )
        .unwrap();
        assert_eq!(r.requirements[0].concept, "car");
        assert_eq!(r.requirements[1].desired_definition.as_deref(), Some("x"));
        let candidates = vec![("a".to_string(), script(&[], &[]))];
        assert!(rank_services(&CFG, &MatchRequest { requirements: vec![] }, &candidates).is_err());
        assert!(rank_services(&CFG, &r, &[]).is_err());
    }

    #[test]
    fn single_candidate_first() {
        let r = MatchRequest::new(vec![ConceptRequirement::new("car", None)]).unwrap();
        let ranked = rank_services(&CFG, &r, &[("only".into(), script(&[("zzz", &[])], &[]))]).unwrap();
        assert_eq!(ranked.len(), 1);
        assert_eq!(ranked[0].service_id, "only");
        assert_eq!(ranked[0].total_score, 0.0);
    }

    #[test]
    fn metric_on_small_alphabet_matches_oracle() {
        let mut words = vec![String::new()];
        for len in 1..=3 {
            let mut next = Vec::new();
            for w in words.iter().filter(|w| w.len() == len - 1) {
                for c in ['a', 'b', 'c'] {
                    next.push(format!("{w}{c}"));
                }
            }
            words.extend(next);
        }
        for a in &words {
            for b in &words {
                assert_eq!(levenshtein(a, b), naive_str(a, b), "{a:?} {b:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn levenshtein_is_a_metric(a in "[a-dA-D]{0,6}", b in "[a-d]{0,6}", c in "[a-d]{0,6}") {
            prop_assert_eq!(levenshtein(&a, &b), levenshtein(&b, &a));
            prop_assert_eq!(levenshtein(&a, &b) == 0, a.to_lowercase() == b.to_lowercase());
            prop_assert!(levenshtein(&a, &c) <= levenshtein(&a, &b) + levenshtein(&b, &c));
        }

        #[test]
        fn similarities_symmetric_and_bounded(a in "[a-z ,]{0,30}", b in "[a-z ,]{0,30}") {
            let t = token_similarity(&a, &b);
            prop_assert_eq!(t, token_similarity(&b, &a));
            prop_assert!((0.0..=1.0).contains(&t));
            let d = definition_similarity(&a, &b);
            prop_assert_eq!(d, definition_similarity(&b, &a));
            prop_assert!((0.0..=1.0).contains(&d));
        }

        #[test]
        fn annotation_never_lowers_name_score(
            concept in "[a-e]{1,5}",
            term in "[a-e]{1,5}",
            def in "[a-e ]{0,20}",
            others in proptest::collection::vec("[a-e]{1,5}", 0..4),
        ) {
            let mut keywords: Vec<CandidateKeyword> = others.iter().map(|o| keyword(o, &[])).collect();
            keywords.push(keyword(&term, &[]));
            keywords.sort_by(|x, y| x.term.cmp(&y.term));
            keywords.dedup_by(|x, y| x.term == y.term);
            let req = ConceptRequirement::new(&concept, None);
            let before = concept_match(&CFG, &req, &keywords).name_score;
            prop_assume!(!def.trim().is_empty());
            for k in keywords.iter_mut().filter(|k| k.term == term) {
                k.annotations.push(KeywordAnnotation::new(&term, "en", "http://d/", &def).unwrap());
            }
            let after = concept_match(&CFG, &req, &keywords).name_score;
            prop_assert!(after >= before);
        }

        #[test]
        fn casing_does_not_change_scores(concept in "[a-eA-E]{1,5}", term in "[a-eA-E]{1,5}") {
            let lower = concept_match(&CFG, &ConceptRequirement::new(&concept.to_lowercase(), None), &[keyword(&term.to_lowercase(), &[])]);
            let mixed = concept_match(&CFG, &ConceptRequirement::new(&concept, None), &[keyword(&term, &[])]);
            prop_assert_eq!(lower.combined_score, mixed.combined_score);
            prop_assert_eq!(lower.name_score, mixed.name_score);
        }
    }
}
