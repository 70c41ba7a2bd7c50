"""HTTP service: app factory, state wiring, pick log, survey logic, client."""

from modq.service.app import create_app
from modq.service.client import ModqClient, ServiceError
from modq.service.picks import PickEvent, PickLog, PickLogError
from modq.service.state import AppState, ModelBundle, build_state, bundle_from_forest
from modq.service.survey import (
    MAX_RECOMMENDED,
    RECOMMEND_THRESHOLD,
    ArticleSurveyReport,
    SurveyReport,
    SurveySet,
    build_survey,
    display_features,
    recommended_ids,
    survey_report,
)

__all__ = [
    "MAX_RECOMMENDED",
    "RECOMMEND_THRESHOLD",
    "AppState",
    "ArticleSurveyReport",
    "ModelBundle",
    "ModqClient",
    "PickEvent",
    "PickLog",
    "PickLogError",
    "ServiceError",
    "SurveyReport",
    "SurveySet",
    "build_state",
    "build_survey",
    "bundle_from_forest",
    "create_app",
    "display_features",
    "recommended_ids",
    "survey_report",
]
