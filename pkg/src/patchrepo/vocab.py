"""Vocabulary IRIs used by patch documents."""

from __future__ import annotations

PRO = "http://purl.org/hpi/patchr#"
GUO = "http://webr3.org/owl/guo#"
PRV = "http://purl.org/net/provenance/ns#"

# pro: patch description
PRO_PATCH = PRO + "Patch"
PRO_PATCH_GROUP = PRO + "PatchGroup"
PRO_HAS_UPDATE = PRO + "hasUpdate"
PRO_HAS_ADVOCATE = PRO + "hasAdvocate"
PRO_HAS_CRITICISER = PRO + "hasCriticiser"
PRO_APPLIES_TO = PRO + "appliesTo"
PRO_STATUS = PRO + "status"
PRO_PATCH_TYPE = PRO + "patchType"
PRO_MEMBER_OF = PRO + "memberOf"
PRO_COMMENT = PRO + "comment"
PRO_HAS_PROVENANCE = PRO + "hasProvenance"

# pro: patch type individuals
PRO_WRONG_FACT = PRO + "WrongFact"
PRO_MISSING_FACT = PRO + "MissingFact"
PRO_ENCODING_ERROR = PRO + "EncodingError"
PRO_DATATYPE_ERROR = PRO + "DatatypeError"

# guo: graph update ontology
GUO_UPDATE_INSTRUCTION = GUO + "UpdateInstruction"
GUO_TARGET_GRAPH = GUO + "target_graph"
GUO_TARGET_SUBJECT = GUO + "target_subject"
GUO_INSERT = GUO + "insert"
GUO_DELETE = GUO + "delete"

# prv: provenance vocabulary
PRV_DATA_CREATION = PRV + "DataCreation"
PRV_PERFORMED_BY = PRV + "performedBy"
PRV_INVOLVED_ACTOR = PRV + "involvedActor"
PRV_PERFORMED_AT = PRV + "performedAt"
