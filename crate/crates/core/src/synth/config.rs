use serde::{Deserialize, Serialize};

use super::SynthError;
use crate::graphs::NodeCategory;
use crate::ingest::TweetKind;

/// Target share of each tweet kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KindMix {
    pub original: f64,
    pub retweet: f64,
    pub quote: f64,
    pub reply: f64,
}

impl Default for KindMix {
    fn default() -> Self {
        KindMix { original: 0.44, retweet: 0.35, quote: 0.14, reply: 0.07 }
    }
}

impl KindMix {
    pub fn share(&self, kind: TweetKind) -> f64 {
        match kind {
            TweetKind::Original => self.original,
            TweetKind::Retweet => self.retweet,
            TweetKind::Quote => self.quote,
            TweetKind::Reply => self.reply,
        }
    }

    /// Integer counts summing to `total`, by largest remainder.
    pub fn counts(&self, total: usize) -> [usize; 4] {
        let shares = TweetKind::ALL.map(|k| self.share(k) * total as f64);
        let mut counts = shares.map(|s| s.floor() as usize);
        let mut rest = total - counts.iter().sum::<usize>();
        let mut order: Vec<usize> = (0..4).collect();
        order.sort_by(|&a, &b| {
            let (fa, fb) = (shares[a] - shares[a].floor(), shares[b] - shares[b].floor());
            fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
        });
        for i in order {
            if rest == 0 {
                break;
            }
            counts[i] += 1;
            rest -= 1;
        }
        counts
    }
}

/// One background community.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommunitySpec {
    pub size: usize,
    /// Dominant hashtag category of the community's vocabulary.
    pub focus: NodeCategory,
    /// Probability that a member's own tweet carries political terms.
    pub political_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CampaignSpec {
    /// A fresh account posts one tweet pairing a club hashtag with a
    /// political hashtag; political-community users amplify it.
    Hijack {
        retweets: usize,
        quotes: usize,
        /// Distinct retweeting users.
        audience: usize,
        /// Audience members whose profile names the club.
        affiliated: usize,
        /// Retweets by the single most active amplifier.
        repeat_bot: usize,
        /// Index of the football community whose club tag is used.
        club: usize,
    },
    /// Fresh fan accounts that mostly retweet a few political roots.
    Activism {
        members: usize,
        roots: usize,
        root_posts: usize,
        tweets_per_member: f64,
        retweet_share: f64,
        club: usize,
    },
    /// A fresh account that draws mentions, replies and quotes from
    /// political-community users while barely posting about football.
    Megaphone {
        mentions: usize,
        replies: usize,
        quotes: usize,
        own_posts: usize,
        topical_posts: usize,
    },
}

impl CampaignSpec {
    pub fn hijack() -> Self {
        CampaignSpec::Hijack { retweets: 1413, quotes: 205, audience: 1250, affiliated: 10, repeat_bot: 11, club: 0 }
    }

    pub fn activism() -> Self {
        CampaignSpec::Activism {
            members: 1379,
            roots: 2,
            root_posts: 12,
            tweets_per_member: 3.5,
            retweet_share: 0.97,
            club: 1,
        }
    }

    pub fn megaphone() -> Self {
        CampaignSpec::Megaphone { mentions: 948, replies: 120, quotes: 60, own_posts: 6, topical_posts: 1 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CampaignSpec::Hijack { .. } => "hijack",
            CampaignSpec::Activism { .. } => "activism",
            CampaignSpec::Megaphone { .. } => "megaphone",
        }
    }

    /// Fresh accounts the campaign consumes.
    pub fn fresh_users(&self) -> usize {
        match self {
            CampaignSpec::Hijack { .. } | CampaignSpec::Megaphone { .. } => 1,
            CampaignSpec::Activism { members, roots, .. } => members + roots,
        }
    }

    /// Records the campaign injects, per kind in [`TweetKind::ALL`] order.
    pub fn kind_counts(&self) -> [usize; 4] {
        match *self {
            CampaignSpec::Hijack { retweets, quotes, .. } => [1, retweets, quotes, 0],
            CampaignSpec::Activism { members, root_posts, tweets_per_member, retweet_share, .. } => {
                let total = member_tweet_total(members, tweets_per_member);
                let rts = (retweet_share * total as f64).round() as usize;
                [root_posts + total - rts, rts, 0, 0]
            }
            CampaignSpec::Megaphone { mentions, replies, quotes, own_posts, topical_posts } => {
                [mentions + own_posts + topical_posts, 0, quotes, replies]
            }
        }
    }

    pub fn record_count(&self) -> usize {
        self.kind_counts().iter().sum()
    }

    pub(crate) fn validate(&self) -> Result<(), SynthError> {
        let bad = |m: String| Err(SynthError::Config(format!("{} campaign: {m}", self.name())));
        match *self {
            CampaignSpec::Hijack { retweets, audience, affiliated, repeat_bot, .. } => {
                if audience == 0 || retweets < audience {
                    return bad(format!("need 0 < audience ({audience}) <= retweets ({retweets})"));
                }
                if affiliated > audience {
                    return bad("more affiliated users than audience".into());
                }
                if repeat_bot == 0 || repeat_bot - 1 > retweets - audience {
                    return bad(format!("repeat_bot {repeat_bot} incompatible with {retweets} retweets from {audience} users"));
                }
            }
            CampaignSpec::Activism { members, roots, root_posts, tweets_per_member, retweet_share, .. } => {
                if members == 0 || roots == 0 || root_posts < roots {
                    return bad("need members, roots and at least one post per root".into());
                }
                if !(tweets_per_member >= 1.0) {
                    return bad("tweets_per_member must be at least 1".into());
                }
                if !(0.0..=1.0).contains(&retweet_share) {
                    return bad("retweet_share outside [0, 1]".into());
                }
            }
            CampaignSpec::Megaphone { mentions, own_posts, .. } => {
                if mentions == 0 {
                    return bad("zero mentions".into());
                }
                if own_posts == 0 {
                    return bad("needs at least one own post to reply to".into());
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn member_tweet_total(members: usize, per_member: f64) -> usize {
    ((members as f64 * per_member).round() as usize).max(members)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SynthConfig {
    pub seed: u64,
    pub n_users: usize,
    /// Total size of the generated community vocabularies.
    pub n_hashtags: usize,
    /// Corpus size including campaign records.
    pub n_tweets: usize,
    pub communities: Vec<CommunitySpec>,
    /// Share of each vocabulary borrowed from the next community.
    pub vocabulary_overlap: f64,
    pub kind_mix: KindMix,
    /// Per-user probability of naming a club in the profile, by community focus.
    pub football_affiliation: f64,
    pub political_affiliation: f64,
    pub other_affiliation: f64,
    pub campaigns: Vec<CampaignSpec>,
}

impl Default for SynthConfig {
    fn default() -> Self {
        let c = |size, focus, political_fraction| CommunitySpec { size, focus, political_fraction };
        use NodeCategory::*;
        SynthConfig {
            seed: 0,
            n_users: 5400,
            n_hashtags: 400,
            n_tweets: 50_000,
            communities: vec![
                c(450, Football, 0.1),
                c(450, Football, 0.1),
                c(450, Football, 0.1),
                c(450, Football, 0.1),
                c(500, Political, 0.8),
                c(500, Political, 0.8),
                c(500, Political, 0.8),
                c(200, Location, 0.2),
                c(200, Location, 0.2),
                c(200, Other, 0.1),
            ],
            vocabulary_overlap: 0.1,
            kind_mix: KindMix::default(),
            football_affiliation: 0.22,
            political_affiliation: 0.01,
            other_affiliation: 0.05,
            campaigns: vec![CampaignSpec::hijack(), CampaignSpec::activism(), CampaignSpec::megaphone()],
        }
    }
}

impl SynthConfig {
    /// Default scenario without campaigns.
    pub fn background(seed: u64, n_tweets: usize) -> Self {
        SynthConfig { seed, n_tweets, campaigns: Vec::new(), ..Default::default() }
    }

    pub fn community_users(&self) -> usize {
        self.communities.iter().map(|c| c.size).sum()
    }

    pub fn focus_users(&self, focus: NodeCategory) -> usize {
        self.communities.iter().filter(|c| c.focus == focus).map(|c| c.size).sum()
    }

    pub fn football_communities(&self) -> usize {
        self.communities.iter().filter(|c| c.focus == NodeCategory::Football).count()
    }

    /// Background records once campaign records are set aside, per kind.
    pub fn background_counts(&self) -> Result<[usize; 4], SynthError> {
        let target = self.kind_mix.counts(self.n_tweets);
        let mut out = target;
        for spec in &self.campaigns {
            for (o, c) in out.iter_mut().zip(spec.kind_counts()) {
                *o = o.checked_sub(c).ok_or_else(|| {
                    SynthError::Config(format!("campaigns need more records than n_tweets = {} allows", self.n_tweets))
                })?;
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        let err = |m: String| Err(SynthError::Config(m));
        let sum = self.kind_mix.original + self.kind_mix.retweet + self.kind_mix.quote + self.kind_mix.reply;
        if (sum - 1.0).abs() > 1e-9 || TweetKind::ALL.iter().any(|&k| self.kind_mix.share(k) < 0.0) {
            return err(format!("kind_mix shares must be non-negative and sum to 1, got {sum}"));
        }
        if self.communities.is_empty() || self.communities.iter().any(|c| c.size < 4) {
            return err("need at least one community, each with 4 or more users".into());
        }
        if self.communities.iter().any(|c| !(0.0..=1.0).contains(&c.political_fraction)) {
            return err("political_fraction outside [0, 1]".into());
        }
        if !(0.0..1.0).contains(&self.vocabulary_overlap) {
            return err("vocabulary_overlap outside [0, 1)".into());
        }
        for p in [self.football_affiliation, self.political_affiliation, self.other_affiliation] {
            if !(0.0..=1.0).contains(&p) {
                return err("affiliation rates must lie in [0, 1]".into());
            }
        }
        if self.football_communities() == 0 || self.football_communities() > super::vocab::CLUBS.len() {
            return err(format!("need between 1 and {} football communities", super::vocab::CLUBS.len()));
        }
        if self.n_hashtags < 4 * self.communities.len() {
            return err("n_hashtags too small for the community count".into());
        }
        let reserve: usize = self.campaigns.iter().map(CampaignSpec::fresh_users).sum();
        if self.community_users() + reserve > self.n_users {
            return err(format!(
                "n_users = {} cannot hold {} community users plus {} fresh campaign accounts",
                self.n_users,
                self.community_users(),
                reserve
            ));
        }
        let political = self.focus_users(NodeCategory::Political);
        for spec in &self.campaigns {
            spec.validate()?;
            match *spec {
                CampaignSpec::Hijack { audience, quotes, club, .. } => {
                    if audience > political || quotes > political {
                        return err(format!("hijack audience exceeds the {political} political-community users"));
                    }
                    if club >= self.football_communities() {
                        return err(format!("hijack club {club} has no football community"));
                    }
                }
                CampaignSpec::Megaphone { mentions, replies, quotes, .. } => {
                    if mentions.max(replies).max(quotes) > political {
                        return err(format!("megaphone needs more than the {political} political-community users"));
                    }
                }
                CampaignSpec::Activism { club, .. } => {
                    if club >= self.football_communities() {
                        return err(format!("activism club {club} has no football community"));
                    }
                }
            }
        }
        let background: usize = self.background_counts()?.iter().sum();
        if background < self.communities.len() {
            return err("too few background tweets".into());
        }
        Ok(())
    }
}
