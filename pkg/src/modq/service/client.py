"""Thin HTTP client for the service; the CLI and tests go through this."""

from __future__ import annotations

from typing import Sequence

import httpx


class ServiceError(RuntimeError):
    def __init__(self, status_code: int, detail: str):
        super().__init__(f"HTTP {status_code}: {detail}")
        self.status_code = status_code
        self.detail = detail


class ModqClient:
    """Wraps an httpx.Client; tests pass fastapi's TestClient as `http`."""

    def __init__(
        self,
        base_url: str = "http://localhost:8000",
        rater_id: str | None = None,
        http: httpx.Client | None = None,
        timeout: float = 30.0,
    ):
        self.rater_id = rater_id
        self._http = (
            http
            if http is not None
            else httpx.Client(base_url=base_url, timeout=timeout)
        )

    def close(self) -> None:
        self._http.close()

    def __enter__(self) -> "ModqClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def _json(self, response: httpx.Response) -> dict:
        if response.status_code >= 400:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise ServiceError(response.status_code, str(detail))
        return response.json()

    def healthz(self) -> dict:
        return self._json(self._http.get("/healthz"))

    def articles(self) -> dict:
        return self._json(self._http.get("/articles"))

    def recommendations(self, article_id: str, k: int = 5) -> dict:
        return self._json(
            self._http.get(
                f"/articles/{article_id}/recommendations", params={"k": k}
            )
        )

    def survey(self, article_id: str, seed: int = 0) -> dict:
        return self._json(
            self._http.get(f"/articles/{article_id}/survey", params={"seed": seed})
        )

    def submit_pick(
        self,
        article_id: str,
        comment_id: str,
        decision: bool,
        rater_id: str | None = None,
    ) -> dict:
        rater = rater_id or self.rater_id
        if not rater:
            raise ValueError("a rater_id is required to submit picks")
        return self._json(
            self._http.post(
                "/picks",
                json={
                    "article_id": article_id,
                    "comment_id": comment_id,
                    "decision": decision,
                },
                headers={"X-Rater-Id": rater},
            )
        )

    def survey_report(self, article_ids: Sequence[str] | None = None) -> dict:
        params = [("article_id", a) for a in article_ids] if article_ids else None
        return self._json(self._http.get("/reports/survey", params=params))
