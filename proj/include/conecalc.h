/* conecalc: exact-rational chamber and inflation calculus for the reduced
 * symplectic cone of blown-up irrational ruled surfaces.
 *
 * All functions return a status code (CC_OK on success) and report details
 * through cc_last_error(). String outputs are heap-allocated; release them
 * with cc_string_free(). Homology classes travel as text in the grammar
 *   class := ['+'|'-'] term (('+'|'-') term)*,  term := [coeff]('B'|'F'|'E'index)
 * and area vectors as "mu=<rat> [f=<rat>] c=<rat>,<rat>,..." with exact
 * rationals "p" or "p/q". Compound results are canonical JSON (sorted keys,
 * rationals as strings, no floats).
 */
#ifndef CONECALC_H
#define CONECALC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cc_manifold cc_manifold;

enum {
  CC_OK = 0,
  CC_ERR_INTERNAL = 1,
  CC_ERR_INPUT = 2,      /* parse errors, dimension mismatches, bad arguments */
  CC_ERR_DOMAIN = 3,     /* NotInCone, NotNormalized, range violations, ... */
  CC_ERR_UNREACHABLE = 4 /* unreachable targets, guarded enumerations */
};

enum {
  CC_FORMAT_JSON = 0,
  CC_FORMAT_CSV = 1,
  CC_FORMAT_SVG = 2
};

const char *cc_version(void);

/* descriptor of M_g blown up n times; NULL when g < 0 or n < 0 */
cc_manifold *cc_manifold_new(int g, int n);
void cc_manifold_free(cc_manifold *m);
int cc_manifold_genus(const cc_manifold *m);
int cc_manifold_blowups(const cc_manifold *m);

/* message for the last failing call on this thread; "" when none */
const char *cc_last_error(void);
void cc_string_free(char *s);

/* --- lattice --- */
int cc_pair(const cc_manifold *m, const char *a, const char *b, char **out);
int cc_canonical_class(const cc_manifold *m, char **out);
int cc_genus(const cc_manifold *m, const char *cls, char **out);
int cc_index(const cc_manifold *m, const char *cls, char **out);
int cc_codim(const cc_manifold *m, const char *cls, char **out);
int cc_is_exceptional(const cc_manifold *m, const char *cls, int *out);
int cc_is_reduction(const cc_manifold *m, const char *cls, int *out);
int cc_canonical_form(const cc_manifold *m, const char *cls, char **out);

/* --- cone --- */
int cc_exceptional_set(const cc_manifold *m, char **out_json);
int cc_cone_check(const cc_manifold *m, const char *u, char **out_json);
int cc_reduced_check(const cc_manifold *m, const char *u, char **out_json);
int cc_pd_class(const cc_manifold *m, const char *u, char **out_json);
/* diag_fiber_bound > 0 adds the diagnostic fiber-class enumeration */
int cc_chamber(const cc_manifold *m, const char *u, int diag_fiber_bound, char **out_json);
int cc_same_chamber(const cc_manifold *m, const char *u0, const char *u1, int *out);
/* format: CC_FORMAT_JSON or CC_FORMAT_CSV */
int cc_segment_walls(const cc_manifold *m, const char *u0, const char *u1, int closed_end,
                     int format, char **out);
/* fixed: comma-separated assignments "c2=1/2,mu=3" leaving exactly two of
 * (mu, c1..cn) free; window: "x0:x1,y0:y1" for the free pair in (mu, c_i)
 * order; format: JSON, CSV or SVG (svg_scale pixels per unit) */
int cc_slice(const cc_manifold *m, const char *fixed, const char *window, int format,
             int svg_scale, char **out);

/* --- inflation --- */
int cc_inflate(const cc_manifold *m, const char *u, const char *z, const char *t, int strict,
               char **out_vec);
int cc_normalize(const cc_manifold *m, const char *u, char **out_vec);
/* indices: comma-separated 1-based list, "" for the empty set */
int cc_descend(const cc_manifold *m, const char *u, long k, const char *indices, const char *t,
               int strict, char **out_path_json);
int cc_alternate(const cc_manifold *m, const char *u, const char *s_cls, const char *x_cls,
                 int rounds, char **out_json);
/* hints_json: {"sections":bool,"mild_pairs":[{"S":...,"X":...}]}; NULL or ""
 * for the defaults */
int cc_plan(const cc_manifold *m, const char *u_from, const char *u_to, const char *hints_json,
            char **out_path_json);
/* replays path_json and reports the end vector; fails when the recorded end
 * does not match the replay */
int cc_replay(const cc_manifold *m, const char *path_json, char **out_vec);

/* --- strata --- */
int cc_decompose(const cc_manifold *m, const char *e_cls, const char *u, int max_parts,
                 int coeff_bound, char **out_json);
int cc_classify_decomposition(const cc_manifold *m, const char *dec_json, char **out_json);
int cc_cover_pairing(const cc_manifold *m, const char *cls, long mult, char **out_json);
/* classes: comma-separated list */
int cc_collection_codim(const cc_manifold *m, const char *classes, char **out_json);
int cc_classify_profile(const cc_manifold *m, const char *profile_json, const char *u,
                        char **out_json);

#ifdef __cplusplus
}
#endif

#endif /* CONECALC_H */
