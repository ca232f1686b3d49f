import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("ci")

from ackmine import AuthorName, DocType, Record, default_blacklist, load_surname_set


@pytest.fixture(scope="session")
def blacklist():
    return default_blacklist()


@pytest.fixture(scope="session")
def small_lexicon():
    return load_surname_set(
        ["Zhang", "Feng", "Xu", "Smith", "Jones", "Curie", "Banting", "Ingelheim", "III", "Berg"]
    )


@pytest.fixture
def paper_x_record():
    return Record(
        id="paper-x",
        year=2015,
        discipline="Chemistry",
        doc_type=DocType.ARTICLE,
        authors=(
            AuthorName("J.", "Zhang"),
            AuthorName("X.", "Feng"),
            AuthorName("Y.", "Xu"),
        ),
        ack_text="Jinsong Zhang, Xiao Feng, and Yong Xu contributed equally to this work",
    )
