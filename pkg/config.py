import os

# Toggle Debug Mode (DEBUG-level logging)
DEBUG_MODE = False

# Default object-size bound for axiom suites
DEFAULT_BOUND = 3

# Seed used whenever sampling is requested without an explicit one (library calls only)
DEFAULT_SEED = 0

# Largest codomain scanned when testing joint epicity of complementary kernels
JOINT_EPIC_CODOMAIN_CAP = 2

# Monoidal separator: exhaustive up to this many parallel pairs per signature, sampled above
SEPARATOR_PAIR_CEILING = 10 ** 6
SEPARATOR_SAMPLES = 200

# Kernel search gives up (SearchExhausted) beyond this many candidate matrices
KERNEL_SEARCH_CEILING = 10 ** 6

# Sampled triples for hom-lattice checks in sampled mode
LATTICE_SAMPLES = 1000

# Random families for the join / biproduct-sum comparison, and their largest object size
ENRICHMENT_FAMILIES = 200
ENRICHMENT_MAX_SIZE = 4

# Concurrent worker threads for suite conditions
CHECK_THREAD_LIMIT = 4

# Bundled rigs and example files
CORPUS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "relcat", "static")

# Sampled morphism pairs for the naturality of the atom tensor map
NATURALITY_SAMPLES = 100

# Object sizes for the monoidal coherence squares in a full check, capped by the bound
COHERENCE_SIZES = [(2, 2, 2), (1, 2, 3)]
