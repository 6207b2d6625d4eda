"""Models, relations, model documents and model enumeration."""

from asimkit.data.generate import enumerate_models, enumerate_pointed_models, sample_models, save_dataset
from asimkit.data.intuitionistic import IntuitionisticReport, int_axioms, validate_intuitionistic
from asimkit.data.loader import (
    dump_model,
    dump_relation,
    load_bisim_relation,
    load_family,
    load_model,
    load_relation,
    load_worked_examples,
    read_model,
)
from asimkit.data.models import Model, PointedModel, is_isomorphic, make_model, restrict_family, to_dot
from asimkit.data.relations import Direction, DirectedPair, DirectedRelation, TupleEntry, TupleRelation
