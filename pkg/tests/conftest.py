import pytest
from hypothesis import HealthCheck, settings, strategies as st

from monoidlab.automata import Lang, all_words
from monoidlab.transducer import make_transducer

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

short_words = st.text(alphabet="01", max_size=3)


@st.composite
def dfa_langs(draw, max_states=4):
    n = draw(st.integers(1, max_states))
    delta = [[draw(st.integers(0, n - 1)) for _ in "01"] for _ in range(n)]
    accept = {q for q in range(n) if draw(st.booleans())}
    return Lang.from_dfa(delta, accept), delta, accept


def dfa_accepts(delta, accept, w):
    q = 0
    for a in w:
        q = delta[q][int(a)]
    return q in accept


@st.composite
def sequential_fns(draw, max_states=3):
    """Deterministic total transducers: always functional."""
    n = draw(st.integers(1, max_states))
    edges = [(p, a, draw(short_words), draw(st.integers(0, n - 1))) for p in range(n) for a in "01"]
    finals = {p: draw(short_words) for p in range(n)}
    return make_transducer(n, edges, finals, "random")


def brute(f, max_len):
    return {w: f(w) for w in all_words(max_len)}


@pytest.fixture(scope="session")
def suite():
    from monoidlab.suite import suite_functions

    return suite_functions()
