"""Built-in speech-therapy knowledge base used by the demos and the test suite.

Three assessment inputs (problem severity, family involvement, child age)
drive one output, the weekly session count. Copy `SPEECH_THERAPY_KB` to a
file to seed a store of your own.
"""

SPEECH_THERAPY_KB = """\
# Speech therapy session planning.

variable speech_problems_level input range 0 3 {
  term low tri 0 1 2
  term normal tri 1 2 3
  term high tri 2 3 3
}

variable family_implication input range 0 4 {
  term reduce tri 0 1 2
  term moderate tri 1 2 3
  term high tri 2 3 4
}

variable child_age input range 3 7 {
  term small tri 3 3 5
  term medium tri 4 5 6
  term big tri 5 7 7
}

variable weekly_session_number output range 0 4 {
  term low tri 0 1 2
  term normal tri 1 2 3
  term high tri 2 3 4
}

IF (speech_problems_level is high) and (child_age is medium) and (family_implication is reduce) THEN weekly_session_number is high;
IF (speech_problems_level is low) and (child_age is small) and (family_implication is moderate) THEN weekly_session_number is low;
IF (speech_problems_level is low) and (child_age is medium) and (family_implication is moderate) THEN weekly_session_number is low;
IF (speech_problems_level is normal) and (child_age is small) and (family_implication is moderate) THEN weekly_session_number is normal;
IF (speech_problems_level is normal) and (child_age is medium) and (family_implication is moderate) THEN weekly_session_number is normal;
"""

EXAMPLE_INPUTS = {
    "speech_problems_level": 1.62,
    "family_implication": 2.00,
    "child_age": 4.50,
}
