"""HTTP API over the recommender: FastAPI app factory."""

from __future__ import annotations

from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Header, HTTPException, Query
from fastapi.staticfiles import StaticFiles

from modq.corpus.records import format_timestamp
from modq.errors import FeatureError, SchemaMismatchError
from modq.explain.decompose import decompose_matrix, top_contributions
from modq.ranking.ranker import rank_comments
from modq.service.picks import PickEvent
from modq.service.schemas import (
    ArticleSummary,
    ArticlesResponse,
    ArticleSurveyReportModel,
    ContributionEntry,
    DisplayFeatures,
    Explanation,
    HealthResponse,
    PickAck,
    PickRecord,
    PickRequest,
    RecommendationEntry,
    RecommendationsResponse,
    SurveyItem,
    SurveyReportResponse,
    SurveyResponse,
)
from modq.service.state import AppState
from modq.service.survey import build_survey, display_features, survey_report

EXPLANATION_TOP = 10


def _now_ts() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def create_app(state: AppState, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="modq comment recommender")
    app.state.modq = state

    def article_or_404(article_id: str) -> list[str]:
        if article_id not in state.store.articles:
            raise HTTPException(status_code=404, detail=f"unknown article {article_id}")
        return state.store.article_comment_ids(article_id)

    @app.get("/articles", response_model=ArticlesResponse)
    def list_articles() -> ArticlesResponse:
        bundle = state.bundle
        articles = [
            ArticleSummary(
                article_id=a.article_id,
                published_at=format_timestamp(a.published_at),
                comment_count=len(a.comment_ids),
            )
            for a in state.store.articles.values()
        ]
        return ArticlesResponse(model_version=bundle.version, articles=articles)

    @app.get(
        "/articles/{article_id}/recommendations",
        response_model=RecommendationsResponse,
    )
    def recommendations(
        article_id: str, k: int = Query(default=5, ge=1)
    ) -> RecommendationsResponse:
        bundle = state.bundle
        comment_ids = article_or_404(article_id)
        try:
            probabilities = bundle.ranker.scores(comment_ids)
            top_ids = rank_comments(comment_ids, probabilities, k=k)
            X_top = bundle.featurizer.rows(top_ids)
        except (FeatureError, SchemaMismatchError) as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        bias, contributions, predicted = decompose_matrix(bundle.forest, X_top)
        prob_of = dict(zip(comment_ids, probabilities))
        entries = []
        for i, cid in enumerate(top_ids):
            comment = state.store.comment(cid)
            top = top_contributions(
                bundle.forest.schema.names, contributions[i], limit=EXPLANATION_TOP
            )
            entries.append(
                RecommendationEntry(
                    comment_id=cid,
                    rank=i + 1,
                    probability=float(prob_of[cid]),
                    text=comment.text,
                    display=DisplayFeatures(
                        **display_features(state.store, comment)
                    ),
                    explanation=Explanation(
                        bias=bias,
                        predicted=float(predicted[i]),
                        top=[
                            ContributionEntry(feature=name, contribution=value)
                            for name, value in top
                        ],
                    ),
                )
            )
        return RecommendationsResponse(
            model_version=bundle.version,
            article_id=article_id,
            k=k,
            entries=entries,
        )

    @app.get("/articles/{article_id}/survey", response_model=SurveyResponse)
    def survey(article_id: str, seed: int = Query(default=0)) -> SurveyResponse:
        bundle = state.bundle
        article_or_404(article_id)
        try:
            survey_set = build_survey(state.store, bundle.ranker, article_id, seed)
        except (FeatureError, SchemaMismatchError) as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        items = []
        for cid in survey_set.item_ids:
            comment = state.store.comment(cid)
            items.append(
                SurveyItem(
                    comment_id=cid,
                    text=comment.text,
                    display=DisplayFeatures(**display_features(state.store, comment)),
                )
            )
        return SurveyResponse(
            model_version=bundle.version,
            article_id=article_id,
            seed=seed,
            items=items,
        )

    @app.post("/picks", response_model=PickAck)
    def submit_pick(
        body: PickRequest, x_rater_id: str = Header(alias="X-Rater-Id")
    ) -> PickAck:
        bundle = state.bundle
        rater = x_rater_id.strip()
        if not rater:
            raise HTTPException(status_code=400, detail="X-Rater-Id must be non-empty")
        article_or_404(body.article_id)
        if (
            not state.store.has_comment(body.comment_id)
            or state.store.comment(body.comment_id).article_id != body.article_id
        ):
            raise HTTPException(
                status_code=404,
                detail=f"comment {body.comment_id} not in article {body.article_id}",
            )
        event = PickEvent(
            article_id=body.article_id,
            comment_id=body.comment_id,
            rater_id=rater,
            decision=body.decision,
            at=_now_ts(),
        )
        state.pick_log.append(event)
        return PickAck(
            model_version=bundle.version,
            pick=PickRecord(**event.to_json_dict()),
        )

    @app.get("/reports/survey", response_model=SurveyReportResponse)
    def report(
        article_id: list[str] | None = Query(default=None),
    ) -> SurveyReportResponse:
        bundle = state.bundle
        try:
            rep = survey_report(
                state.store, bundle.ranker, state.pick_log, article_id
            )
        except (FeatureError, SchemaMismatchError) as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        picks = [
            PickRecord(**e.to_json_dict())
            for e in state.pick_log.events_for_articles(article_id)
        ]
        return SurveyReportResponse(
            model_version=bundle.version,
            articles=[
                ArticleSurveyReportModel(**a.to_json_dict()) for a in rep.articles
            ],
            mean_ndcg=rep.mean_ndcg,
            alpha=rep.alpha,
            alpha_available=rep.alpha_available,
            n_events=rep.n_events,
            raters=list(rep.raters),
            picks=picks,
        )

    @app.get("/healthz", response_model=HealthResponse)
    def healthz() -> HealthResponse:
        bundle = state.bundle
        return HealthResponse(
            status="ok",
            model_version=bundle.version,
            corpus_digest=state.store.content_digest(),
            n_articles=len(state.store.articles),
            n_comments=len(state.store),
        )

    if ui_dir is not None:
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
