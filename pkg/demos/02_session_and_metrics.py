"""Simulate a reading session and score it.

Drives the protocol engine sentence by sentence with a synthetic reader
whose speed collapses below a critical size, then computes the four summary
metrics and round-trips the session through its CSV log.
"""

import numpy as np

from readacuity import (
    Condition,
    Display,
    Language,
    ResolutionLevel,
    Session,
    export_csv,
    import_csv,
    metrics_from_session,
    packaged_sentence_sets,
    run_trial,
)

rng = np.random.default_rng(42)
sentence_set = packaged_sentence_sets(Language.EN)[0]
condition = Condition(Language.EN, Display.VR, ResolutionLevel.B)

# synthetic reader: ~200 wpm plateau, slowing sharply below 0.2 logMAR and
# failing completely below -0.1
session = Session(participant_id="demo01")
ts = 1_700_000_000_000
print(f"{'size':>6}  {'errors':>6}  {'seconds':>7}  {'wpm':>6}")
while not session.stopped_early and len(session.trials) < len(sentence_set):
    sentence = sentence_set.sentences[len(session.trials)]
    if sentence.logmar >= 0.2:
        seconds = rng.uniform(2.8, 3.2)
        errors = 0
    elif sentence.logmar >= -0.1:
        seconds = rng.uniform(4.5, 7.0)
        errors = int(rng.integers(0, 3))
    else:
        seconds = 8.0
        errors = sentence.word_count  # full miss triggers the stop rule
    end = ts + int(seconds * 1000)
    session = run_trial(session, sentence_set, condition, ts, end, errors)
    ts = end + 800
    t = session.trials[-1]
    wpm = 60.0 * (t.word_count - t.errors) / t.duration_s
    print(f"{t.logmar:+6.1f}  {t.errors:6d}  {t.duration_s:7.2f}  {wpm:6.1f}")

print(f"\nstopped early: {session.stopped_early}")

m = metrics_from_session(session)
print(f"MRS = {m.mrs:.1f} wpm   CPS = {m.cps:+.2f} logMAR   "
      f"RA = {m.ra:+.2f} logMAR   ACC = {m.acc:.3f}")

csv_text = export_csv(session)
assert import_csv(csv_text) == session
print(f"\nCSV log round-trips losslessly ({len(csv_text.splitlines()) - 1} rows).")
