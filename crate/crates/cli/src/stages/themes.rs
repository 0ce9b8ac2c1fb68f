use serde::Serialize;
use terrace::communities::{community_composition, engagement_profile, ward_cluster, ThemeAssignment};

use super::networks::{HASHTAG_SIMILARITY, USER_SIMILARITY};
use super::{Context, Written};
use crate::error::CliError;

pub const COMPOSITIONS: &str = "themes/compositions.json";
pub const THEMES: &str = "themes/themes.json";
pub const ENGAGEMENT: &str = "themes/engagement.json";

#[derive(Serialize)]
struct ThemeFile<'a> {
    requested_k: usize,
    #[serde(flatten)]
    assignment: Option<&'a ThemeAssignment>,
}

pub fn run(ctx: &mut Context, written: &mut Written) -> Result<(), CliError> {
    let annotations = ctx.annotations()?;
    let hashtags = ctx.partition(HASHTAG_SIMILARITY)?;
    let users = ctx.partition(USER_SIMILARITY)?;
    let compositions = community_composition(&hashtags, &annotations);
    ctx.write_json(written, COMPOSITIONS, &compositions)?;

    let requested = ctx.config.communities.theme_count;
    let k = requested.min(compositions.len());
    if k < requested {
        tracing::warn!(requested, communities = compositions.len(), "fewer hashtag communities than themes");
    }
    let themes = if k == 0 {
        None
    } else {
        Some(ward_cluster(&compositions, k).map_err(|e| CliError::runtime("ward clustering", e))?)
    };
    ctx.write_json(written, THEMES, &ThemeFile { requested_k: requested, assignment: themes.as_ref() })?;

    let matrix = ctx.matrix()?;
    let profiles =
        engagement_profile(&users, &hashtags, &matrix, themes.as_ref(), ctx.config.communities.min_community_size);
    ctx.write_json(written, ENGAGEMENT, &profiles)
}
