//! Token inventories for generated corpora.

use crate::graphs::{Annotations, NodeAnnotation, NodeCategory};
use crate::influence::{AffiliationProfile, AffiliationSet};
use crate::ingest::Lexicon;

use super::config::SynthConfig;

pub const CLUBS: [&str; 12] = [
    "ashford", "brackley", "calder", "dunmore", "eastleigh", "fenwick", "garforth", "hexham", "ilkley", "jarrow",
    "kendal", "ludlow",
];

pub const POLITICAL_HASHTAGS: [&str; 15] = [
    "brexit", "ukip", "trump", "edl", "nhs", "bnp", "maga", "ge2017", "ira", "indyref2", "putin", "euref", "snp",
    "labour", "donaldtrump",
];

pub const POLITICAL_KEYWORDS: [&str; 8] = ["brexit", "tory", "corbyn", "labour", "ukip", "libdem", "snp", "sturgeon"];

pub const EXCLUDED_TERMS: [&str; 1] = ["vote"];

/// Filler words. None is a lexicon term on word boundaries; some embed one
/// (`corbynista`, `victory`, `history`) or are excluded (`vote`).
pub const WORDS: [&str; 48] = [
    "match", "goal", "season", "ticket", "keeper", "derby", "transfer", "lineup", "pitch", "fans", "weekend", "away",
    "home", "kickoff", "referee", "var", "tactics", "striker", "league", "cup", "table", "points", "injury", "news",
    "today", "tonight", "great", "poor", "brilliant", "history", "victory", "vote", "corbynista", "pundit", "stadium",
    "chant", "scarf", "pint", "train", "queue", "policy", "council", "minister", "debate", "rally", "march", "budget",
    "election",
];

pub fn club_tag(club: usize) -> String {
    format!("{}fc", CLUBS[club])
}

/// Hashtags available to each community, most frequent first.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    pub communities: Vec<Vec<(String, NodeCategory)>>,
    /// Club tag of each football community, in community order.
    pub clubs: Vec<String>,
    /// Football community index of each entry of `clubs`.
    pub club_communities: Vec<usize>,
    pub political_pool: Vec<String>,
}

fn prefix(c: NodeCategory) -> &'static str {
    match c {
        NodeCategory::Political => "pol",
        NodeCategory::Football => "fb",
        NodeCategory::Location => "loc",
        NodeCategory::Other => "misc",
    }
}

impl Vocabulary {
    pub fn build(config: &SynthConfig) -> Self {
        let n = config.communities.len();
        let mut fresh: Vec<Vec<(String, NodeCategory)>> = Vec::with_capacity(n);
        let mut clubs = Vec::new();
        let mut club_communities = Vec::new();
        let political_ids: Vec<usize> =
            (0..n).filter(|&c| config.communities[c].focus == NodeCategory::Political).collect();
        for (c, spec) in config.communities.iter().enumerate() {
            let size = config.n_hashtags / n + usize::from(c < config.n_hashtags % n);
            let mut tags = Vec::with_capacity(size);
            if spec.focus == NodeCategory::Football {
                let tag = club_tag(clubs.len());
                clubs.push(tag.clone());
                club_communities.push(c);
                tags.push((tag, NodeCategory::Football));
            }
            if let Some(pos) = political_ids.iter().position(|&p| p == c) {
                for (i, t) in POLITICAL_HASHTAGS.iter().enumerate() {
                    if i % political_ids.len() == pos {
                        tags.push((t.to_string(), NodeCategory::Political));
                    }
                }
            }
            let mut j = 0;
            while tags.len() < size {
                tags.push((format!("{}{c}x{j}", prefix(spec.focus)), spec.focus));
                j += 1;
            }
            fresh.push(tags);
        }
        let communities = (0..n)
            .map(|c| {
                let mut tags = fresh[c].clone();
                let borrow = (config.vocabulary_overlap * fresh[c].len() as f64).floor() as usize;
                let next = &fresh[(c + 1) % n];
                if n > 1 {
                    tags.extend(next.iter().take(borrow).cloned());
                }
                tags
            })
            .collect::<Vec<_>>();
        let mut political_pool: Vec<String> = POLITICAL_HASHTAGS.iter().map(|s| s.to_string()).collect();
        for tags in &fresh {
            for (t, cat) in tags {
                if *cat == NodeCategory::Political && !political_pool.contains(t) {
                    political_pool.push(t.clone());
                }
            }
        }
        Vocabulary { communities, clubs, club_communities, political_pool }
    }

    pub fn lexicon(&self) -> Lexicon {
        Lexicon::new(self.political_pool.iter(), POLITICAL_KEYWORDS, EXCLUDED_TERMS).expect("generated lexicon is valid")
    }

    pub fn annotations(&self) -> Annotations {
        let mut items = std::collections::BTreeMap::new();
        for tags in &self.communities {
            for (t, cat) in tags {
                items.insert(t.clone(), *cat);
            }
        }
        for t in &self.political_pool {
            items.insert(t.clone(), NodeCategory::Political);
        }
        Annotations::new(items.into_iter().map(|(node_id, category)| NodeAnnotation { node_id, category }))
            .expect("consistent categories")
    }

    pub fn affiliations(&self, baseline: f64) -> AffiliationSet {
        AffiliationSet::new(self.clubs.iter().enumerate().map(|(i, tag)| {
            AffiliationProfile::new(tag, [CLUBS[i], tag.as_str()], baseline).expect("valid profile")
        }))
        .expect("distinct clubs")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::contains_word;

    #[test]
    fn filler_words_are_never_political() {
        let lex = Vocabulary::build(&SynthConfig::default()).lexicon();
        for w in WORDS {
            assert!(!lex.keywords().iter().any(|k| contains_word(w, k)), "{w}");
            assert!(!lex.is_political_hashtag(w));
        }
    }

    #[test]
    fn vocabularies_overlap_with_neighbours() {
        let config = SynthConfig::default();
        let v = Vocabulary::build(&config);
        assert_eq!(v.clubs.len(), 4);
        assert_eq!(v.communities[0][0].0, "ashfordfc");
        let borrowed = &v.communities[0].last().unwrap().0;
        assert!(v.communities[1].iter().any(|(t, _)| t == borrowed));
        let ann = v.annotations();
        assert!(ann.is("maga", NodeCategory::Political));
        assert!(ann.is("ashfordfc", NodeCategory::Football));
    }
}
