"""Pydantic response/request models for the HTTP API.

SurveyItem is deliberately blind: it has no probability, rank, score, or
recommendation field, so a serialized survey cannot leak what the model
thinks. The schema test asserts this by inspecting the model fields.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class ArticleSummary(BaseModel):
    article_id: str
    published_at: str
    comment_count: int


class ArticlesResponse(BaseModel):
    model_version: str
    articles: list[ArticleSummary]


class DisplayFeatures(BaseModel):
    total_posts_user: int
    featured_posts_user: int
    ratio_rejected: float
    respect_count: int


class ContributionEntry(BaseModel):
    feature: str
    contribution: float


class Explanation(BaseModel):
    bias: float
    predicted: float
    top: list[ContributionEntry]


class RecommendationEntry(BaseModel):
    comment_id: str
    rank: int
    probability: float
    text: str
    display: DisplayFeatures
    explanation: Explanation


class RecommendationsResponse(BaseModel):
    model_version: str
    article_id: str
    k: int
    entries: list[RecommendationEntry]


class SurveyItem(BaseModel):
    comment_id: str
    text: str
    display: DisplayFeatures


class SurveyResponse(BaseModel):
    model_version: str
    article_id: str
    seed: int
    items: list[SurveyItem]


class PickRequest(BaseModel):
    article_id: str
    comment_id: str
    decision: bool


class PickRecord(BaseModel):
    article_id: str
    comment_id: str
    rater_id: str
    decision: bool
    at: str


class PickAck(BaseModel):
    model_version: str
    status: str = Field(default="recorded")
    pick: PickRecord


class ArticleSurveyReportModel(BaseModel):
    article_id: str
    k: int
    ndcg: float | None
    n_picks: int
    approved_ids: list[str]


class SurveyReportResponse(BaseModel):
    model_version: str
    articles: list[ArticleSurveyReportModel]
    mean_ndcg: float | None
    alpha: float | None
    alpha_available: bool
    n_events: int
    raters: list[str]
    picks: list[PickRecord]


class HealthResponse(BaseModel):
    status: str
    model_version: str
    corpus_digest: str
    n_articles: int
    n_comments: int
