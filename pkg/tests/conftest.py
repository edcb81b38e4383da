from __future__ import annotations

import pytest

from trollbench.corpus import Comment
from trollbench.features import Resources
from trollbench.synthetic import synthetic_corpus, synthetic_resources


@pytest.fixture(scope="session")
def synthetic():
    """(snippets, gold) of the bundled 60-snippet corpus."""
    return synthetic_corpus()


@pytest.fixture(scope="session")
def synthetic_res(synthetic):
    snippets, _ = synthetic
    return synthetic_resources(snippets)


@pytest.fixture(scope="session")
def bare_resources():
    """Resources without embeddings, for sparse-group tests."""
    return Resources()


def make_comment(
    cid: str,
    parent: str | None = None,
    thread: str = "t1",
    body: str = "hello there",
    author: str = "user",
    created: int = 0,
    deleted: bool = False,
) -> Comment:
    return Comment(
        id=cid,
        parent_id=parent,
        thread_id=thread,
        author_username=author,
        body=body,
        created_utc=created,
        deleted=deleted,
    )
