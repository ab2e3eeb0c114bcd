"""patchrepo: a collaborative patch repository for RDF datasets.

Users and software agents propose triple-level corrections to published
datasets as patches, endorse or dispute them, and consumers export accepted
patches as SPARQL updates or apply them directly to local graphs.
"""

__version__ = "0.1.0"
