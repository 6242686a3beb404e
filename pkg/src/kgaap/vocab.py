"""Well-known namespaces and the affordance-profile (AAP) vocabulary.

The AAP namespace is a versioned strawman: the terms below are exactly the
assertions the profiler emits and the metadata readers recognise. The
``vocabulary_graph`` function renders the same terms as a self-describing
Turtle document for publishers.
"""

from __future__ import annotations

from .model import Graph, Iri, Literal, Triple

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
XSD = "http://www.w3.org/2001/XMLSchema#"
SH = "http://www.w3.org/ns/shacl#"
VOID = "http://rdfs.org/ns/void#"
DCAT = "http://www.w3.org/ns/dcat#"
DCT = "http://purl.org/dc/terms/"
SD = "http://www.w3.org/ns/sparql-service-description#"
ENT = "http://www.w3.org/ns/entailment/"
OWL_PROFILE = "http://www.w3.org/ns/owl-profile/"
AAP = "https://w3id.org/aap/v0#"

#: namespaces whose IRIs never count as schema names
BUILTIN_NAMESPACES = (RDF, RDFS, OWL, SH, XSD)

STANDARD_PREFIXES = {
    "rdf": RDF,
    "rdfs": RDFS,
    "owl": OWL,
    "xsd": XSD,
    "sh": SH,
    "void": VOID,
    "dcat": DCAT,
    "dct": DCT,
    "sd": SD,
    "ent": ENT,
    "prof": OWL_PROFILE,
    "aap": AAP,
}


def rdf(local: str) -> Iri:
    return Iri(RDF + local)


def rdfs(local: str) -> Iri:
    return Iri(RDFS + local)


def owl(local: str) -> Iri:
    return Iri(OWL + local)


def xsd(local: str) -> Iri:
    return Iri(XSD + local)


def sh(local: str) -> Iri:
    return Iri(SH + local)


def aap(local: str) -> Iri:
    return Iri(AAP + local)


RDF_TYPE = rdf("type")
RDF_FIRST = rdf("first")
RDF_REST = rdf("rest")
RDF_NIL = rdf("nil")
RDF_PROPERTY = rdf("Property")

RDFS_CLASS = rdfs("Class")
RDFS_SUBCLASSOF = rdfs("subClassOf")
RDFS_SUBPROPERTYOF = rdfs("subPropertyOf")
RDFS_DOMAIN = rdfs("domain")
RDFS_RANGE = rdfs("range")

OWL_CLASS = owl("Class")
OWL_OBJECT_PROPERTY = owl("ObjectProperty")
OWL_DATATYPE_PROPERTY = owl("DatatypeProperty")
OWL_ANNOTATION_PROPERTY = owl("AnnotationProperty")
OWL_NAMED_INDIVIDUAL = owl("NamedIndividual")
OWL_ONTOLOGY = owl("Ontology")
OWL_EQUIVALENT_CLASS = owl("equivalentClass")
OWL_EQUIVALENT_PROPERTY = owl("equivalentProperty")
OWL_DISJOINT_WITH = owl("disjointWith")
OWL_INVERSE_OF = owl("inverseOf")
OWL_RESTRICTION = owl("Restriction")
OWL_ON_PROPERTY = owl("onProperty")
OWL_SOME_VALUES_FROM = owl("someValuesFrom")
OWL_ALL_VALUES_FROM = owl("allValuesFrom")
OWL_HAS_VALUE = owl("hasValue")
OWL_INTERSECTION_OF = owl("intersectionOf")
OWL_UNION_OF = owl("unionOf")
OWL_COMPLEMENT_OF = owl("complementOf")
OWL_ONE_OF = owl("oneOf")
OWL_MIN_CARDINALITY = owl("minCardinality")
OWL_MAX_CARDINALITY = owl("maxCardinality")
OWL_CARDINALITY = owl("cardinality")
OWL_FUNCTIONAL_PROPERTY = owl("FunctionalProperty")
OWL_INVERSE_FUNCTIONAL_PROPERTY = owl("InverseFunctionalProperty")
OWL_TRANSITIVE_PROPERTY = owl("TransitiveProperty")
OWL_SYMMETRIC_PROPERTY = owl("SymmetricProperty")
OWL_ASYMMETRIC_PROPERTY = owl("AsymmetricProperty")
OWL_REFLEXIVE_PROPERTY = owl("ReflexiveProperty")
OWL_IRREFLEXIVE_PROPERTY = owl("IrreflexiveProperty")

SH_NODE_SHAPE = sh("NodeShape")
SH_TARGET_CLASS = sh("targetClass")
SH_CLOSED = sh("closed")
SH_PROPERTY = sh("property")
SH_PATH = sh("path")
SH_IGNORED_PROPERTIES = sh("ignoredProperties")

SD_DEFAULT_ENTAILMENT_REGIME = Iri(SD + "defaultEntailmentRegime")

# -- AAP terms -------------------------------------------------------------

AAP_PROFILE = aap("Profile")
AAP_MEDIATOR = aap("Mediator")
AAP_DESCRIBES = aap("describes")

AAP_FRAGMENT = aap("fragment")
AAP_CONFORMANCE_RATIO = aap("conformanceRatio")
AAP_RATIONAL = aap("rational")  # datatype for exact fractions, lexical form "n/d"
AAP_AXIOM_CENSUS_ENTRY = aap("axiomCensusEntry")
AAP_AXIOM_KIND = aap("axiomKind")
AAP_AXIOM_COUNT = aap("axiomCount")

AAP_ENTAILMENT_REGIME = aap("entailmentRegime")
AAP_CONSISTENCY_STATUS = aap("consistencyStatus")
AAP_CERTIFICATE_SOURCE = aap("certificateSource")
AAP_UNCERTIFIED = aap("Uncertified")
AAP_TBOX_CONSISTENT = aap("TBoxConsistent")
AAP_JOINTLY_CONSISTENT = aap("JointlyConsistent")

AAP_CLOSURE_DECLARATION = aap("closureDeclaration")
AAP_PREDICATE = aap("predicate")
AAP_SEMANTICS = aap("semantics")
AAP_SOURCE = aap("source")
AAP_TARGET_CLASS = aap("targetClass")
AAP_GLOBAL_CWA = aap("GlobalCwa")
AAP_PREDICATE_LCWA = aap("PredicateLcwa")
AAP_SHACL_CLOSED_SHAPE = aap("ShaclClosedShape")
AAP_ALL_PREDICATES = aap("AllPredicates")  # wildcard for global closed-world scope
AAP_CLOSED_PREDICATE = aap("closedPredicate")
AAP_OPEN_PREDICATE = aap("openPredicate")
AAP_WORLD_ASSUMPTION = aap("worldAssumption")
AAP_CLOSED_WORLD = aap("ClosedWorld")
AAP_OPEN_WORLD = aap("OpenWorld")

AAP_REGIME_CONFLICT = aap("regimeConflict")
AAP_DECLARED_REGIME = aap("declaredRegime")
AAP_MAXIMUM_FRAGMENT = aap("maximumFragment")

AAP_RESIDENT_CONCEPT = aap("residentConcept")
AAP_RESIDENT_ROLE = aap("residentRole")
AAP_DERIVED_NAME = aap("derivedName")
AAP_NAME = aap("name")
AAP_KIND = aap("kind")
AAP_CONCEPT = aap("Concept")
AAP_ROLE = aap("Role")
AAP_WEAK = aap("weak")
AAP_VIA_REFERENCE = aap("viaReference")
AAP_PROVENANCE = aap("provenance")

AAP_GROUNDS = aap("grounds")
AAP_DOES_NOT_GROUND = aap("doesNotGround")

AAP_TASK_COVERAGE = aap("taskCoverage")
AAP_TASK = aap("task")
AAP_COVERAGE_SCORE = aap("coverageScore")
AAP_COVERED_NAME = aap("coveredName")
AAP_GAP_NAME = aap("gapName")
AAP_KIND_MISMATCH_NAME = aap("kindMismatchName")
AAP_MODULE_NAME = aap("moduleName")
AAP_GROUNDING_ROUTE = aap("groundingRoute")
AAP_LOWER_BOUND = aap("lowerBound")
AAP_FITNESS_VERDICT = aap("fitnessVerdict")

AAP_DISCOVERABILITY_SCORE = aap("discoverabilityScore")
AAP_DISCOVERABILITY_BAND = aap("discoverabilityBand")

AAP_INPUT_NAME = aap("inputName")
AAP_OUTPUT_NAME = aap("outputName")
AAP_PRESERVATION_CLAIM = aap("preservationClaim")

AAP_TOOL_VERSION = aap("toolVersion")
AAP_SCHEMA_DIGEST = aap("schemaDigest")
AAP_DATA_DIGEST = aap("dataDigest")
AAP_METADATA_DIGEST = aap("metadataDigest")
AAP_REFERENCE_DIGEST = aap("referenceDigest")
AAP_GENERATED_AT = aap("generatedAt")

AAP_FRAGMENT_VALUES = {
    "RDF": aap("RDF"),
    "RDFS": aap("RDFS"),
    "OWL-EL": aap("OWL-EL"),
    "OWL-QL": aap("OWL-QL"),
    "OWL-RL": aap("OWL-RL"),
    "OWL-DL": aap("OWL-DL"),
    "OWL-Full": aap("OWL-Full"),
}

#: entailment-regime IRIs accepted in metadata and emitted in profiles
REGIME_IRIS = {
    "Simple": Iri(ENT + "Simple"),
    "RDFS": Iri(ENT + "RDFS"),
    "OWL-EL": Iri(OWL_PROFILE + "EL"),
    "OWL-QL": Iri(OWL_PROFILE + "QL"),
    "OWL-RL": Iri(OWL_PROFILE + "RL"),
    "OWL-DL": Iri(ENT + "OWL-Direct"),
}

_VOCAB_COMMENTS = [
    (AAP_PROFILE, "Class", "An affordance profile describing one knowledge graph."),
    (AAP_MEDIATOR, "Class", "A declared, never-invoked signature bridge between vocabularies."),
    (AAP_DESCRIBES, "Property", "Links a profile to the knowledge graph it describes."),
    (AAP_FRAGMENT, "Property", "Detected schema fragment (one of the aap fragment individuals)."),
    (AAP_CONFORMANCE_RATIO, "Property", "Share of data assertions entailed by the schema, as an aap:rational."),
    (AAP_AXIOM_CENSUS_ENTRY, "Property", "Links a profile to one axiom-kind count."),
    (AAP_ENTAILMENT_REGIME, "Property", "Operative entailment regime of the deployed endpoint."),
    (AAP_CONSISTENCY_STATUS, "Property", "Certified consistency level (read, never proved)."),
    (AAP_CERTIFICATE_SOURCE, "Property", "Who or what certified the consistency status."),
    (AAP_CLOSURE_DECLARATION, "Property", "Links a profile to one completeness declaration."),
    (AAP_CLOSED_PREDICATE, "Property", "Predicate-level local closed-world declaration."),
    (AAP_OPEN_PREDICATE, "Property", "Explicit statement that a predicate is not closed."),
    (AAP_WORLD_ASSUMPTION, "Property", "Global world assumption: aap:OpenWorld or aap:ClosedWorld."),
    (AAP_RESIDENT_CONCEPT, "Property", "Concept name resident in the schema (listing is read as complete)."),
    (AAP_RESIDENT_ROLE, "Property", "Role name resident in the schema (listing is read as complete)."),
    (AAP_DERIVED_NAME, "Property", "Links a profile to a name derivable from the resident signature."),
    (AAP_GROUNDS, "Property", "Metadata-level positive grounding assertion for one name."),
    (AAP_DOES_NOT_GROUND, "Property", "Metadata-level negative grounding assertion for one name."),
    (AAP_TASK_COVERAGE, "Property", "Links a profile to the coverage record for one task type."),
    (AAP_DISCOVERABILITY_SCORE, "Property", "Fraction of the catalogue decidable from metadata alone."),
    (AAP_DISCOVERABILITY_BAND, "Property", "Qualitative band: low, med or high."),
    (AAP_INPUT_NAME, "Property", "Name a mediator consumes."),
    (AAP_OUTPUT_NAME, "Property", "Name a mediator can supply."),
    (AAP_PRESERVATION_CLAIM, "Property", "Unverified free-text preservation claim carried verbatim."),
    (AAP_RATIONAL, "Datatype", "Exact rational number with lexical form 'numerator/denominator'."),
]


def vocabulary_graph() -> Graph:
    """The AAP vocabulary as a small self-describing graph."""
    triples = []
    ontology = Iri(AAP.rstrip("#"))
    triples.append(Triple(ontology, RDF_TYPE, OWL_ONTOLOGY))
    triples.append(Triple(ontology, Iri(OWL + "versionInfo"), Literal("0.1.0")))
    triples.append(
        Triple(
            ontology,
            rdfs("comment"),
            Literal(
                "Vocabulary for agentic affordance profiles of knowledge graphs: "
                "expressivity, discoverability, grounding and trust-scope assertions."
            ),
        )
    )
    kinds = {"Class": OWL_CLASS, "Property": RDF_PROPERTY, "Datatype": rdfs("Datatype")}
    for term, kind, comment in _VOCAB_COMMENTS:
        triples.append(Triple(term, RDF_TYPE, kinds[kind]))
        triples.append(Triple(term, rdfs("comment"), Literal(comment)))
        triples.append(Triple(term, rdfs("isDefinedBy"), ontology))
    for value in AAP_FRAGMENT_VALUES.values():
        triples.append(Triple(value, RDF_TYPE, OWL_NAMED_INDIVIDUAL))
    for value in (
        AAP_UNCERTIFIED,
        AAP_TBOX_CONSISTENT,
        AAP_JOINTLY_CONSISTENT,
        AAP_GLOBAL_CWA,
        AAP_PREDICATE_LCWA,
        AAP_SHACL_CLOSED_SHAPE,
        AAP_ALL_PREDICATES,
        AAP_CLOSED_WORLD,
        AAP_OPEN_WORLD,
        AAP_CONCEPT,
        AAP_ROLE,
    ):
        triples.append(Triple(value, RDF_TYPE, OWL_NAMED_INDIVIDUAL))
    return Graph(triples)


def is_builtin(iri: Iri) -> bool:
    return iri.value.startswith(BUILTIN_NAMESPACES)
