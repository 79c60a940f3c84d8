import json
import logging
from datetime import datetime
from itertools import combinations

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
import seaborn as sns

from . import linalg
from .config import session_folders, session_timestamp, settings, setup_logging
from .downset import (DownsetExpr, canonical_decomposition, disjoint_support_parts, global_support,
                      is_coprimary_downset, local_support, localize, member, primary_component,
                      prune_redundant)
from .errors import BoxTooLarge, InvariantViolation, PrimdecompError
from .grid_module import (HullPresentation, Submodule, divides_coprimary, global_support_module,
                          is_coprimary_module, localize_module, primary_decomposition_module, random_element,
                          realize)
from .oracle import (compare, grid_canonical_decomposition, grid_global_support, grid_local_support,
                     grid_localize, grid_primary_component, grid_set)
from .region import Region

plt.rcParams['font.size'] = 12


class InvariantChecker:
    def __init__(self, subject, log_folder=None, output_folder=None, plot_folder=None,
                 input_name=None, margins=None, oracle_budget=None):
        """
        Initialize the InvariantChecker for one downset or hull-presented module

        Args:
            subject: DownsetExpr or HullPresentation to check
            log_folder: Folder for log files
            output_folder: Folder for the CSV report and JSON summary
            plot_folder: Folder for the heatmap
            input_name: Name of the input, recorded in the summary
            margins: Grid margins for the oracle comparisons (default: configured margin and recheck margin)
            oracle_budget: Degree budget of the coprimary test for module components
        """
        self.subject = subject
        self.input_name = input_name or type(subject).__name__
        self.margins = margins or (settings.grid_margin, settings.grid_recheck_margin)
        self.oracle_budget = oracle_budget

        # Create timestamp for this check session
        self.timestamp = session_timestamp()
        self.session_log_folder, self.session_output_folder, self.session_plot_folder = session_folders(
            'check', self.timestamp, log_folder, output_folder, plot_folder)

        # Setup logging
        self.setup_logging()

        # Initialize result containers
        self.results = []
        self.results_df = None
        self.summary = {}

    def setup_logging(self):
        """Setup logging configuration"""
        log_file = self.session_log_folder / f"check_log_{self.timestamp}.log"
        setup_logging(log_file)
        self.logger = logging.getLogger(__name__)
        self.logger.info(f"Invariant check started at {datetime.now()}")

    def record(self, check, face, passed, margin=None, detail=''):
        status = 'skipped' if passed is None else ('pass' if passed else 'fail')
        self.results.append({'check': check, 'face': face, 'margin': margin, 'status': status, 'detail': detail})
        if status == 'fail':
            self.logger.warning(f"{check} failed on face {face}: {detail}")

    # ------------------------------------------------------------------
    # downsets
    # ------------------------------------------------------------------

    def check_oracle_agreement(self):
        """Every symbolic operation against its grid evaluation, per face and margin"""
        print("\n" + "=" * 60)
        print("SYMBOLIC VS GRID ORACLE")
        print("=" * 60)

        D = self.subject
        lattice = D.lattice
        for margin in self.margins:
            G = grid_set(D, margin=margin)
            print(f"📐 Margin {margin}: grid of shape {G.bits.shape}, {G.count()} member points")
            for face in lattice.faces:
                pairs = [
                    ('localize', localize(D, face), grid_localize(G, face)),
                    ('global_support', global_support(D, face), grid_global_support(G, face, lattice)),
                    ('local_support', local_support(D, face), grid_local_support(G, face, lattice)),
                    ('primary_component', primary_component(D, face), grid_primary_component(G, face, lattice)),
                ]
                for name, symbolic, grid in pairs:
                    result = compare(symbolic, grid)
                    detail = '' if result.equal else f"first mismatch at {result.mismatch}"
                    self.record(name, face.label(), result.equal, margin, detail)

            symbolic_faces = [face for face, _ in canonical_decomposition(D)]
            grid_faces = [face for face, _ in grid_canonical_decomposition(G, lattice)]
            self.record('decomposition_faces', 'all', symbolic_faces == grid_faces, margin,
                        f"symbolic {[f.label() for f in symbolic_faces]} grid {[f.label() for f in grid_faces]}")

    def check_structure(self):
        """Local supports cover D; then disjointness, localization laws, coprimary components, pruning"""
        print("\n" + "=" * 60)
        print("DECOMPOSITION INVARIANTS")
        print("=" * 60)

        D = self.subject
        lattice = D.lattice
        region = D.region()

        union = Region.empty(D.n, D.mode)
        for face in lattice.faces:
            union = union.union(local_support(D, face))
        self.record('union_of_local_supports', 'all', union.equals(region))

        parts = disjoint_support_parts(D)
        overlapping = [(a.label(), b.label()) for (a, pa), (b, pb) in combinations(parts, 2)
                       if not pa.intersect(pb).is_empty]
        self.record('support_parts_disjoint', 'all', not overlapping, detail=f"overlaps {overlapping}" if overlapping else '')
        inside = all(part.issubset(region) for _, part in parts)
        self.record('support_parts_inside', 'all', inside)

        for face in lattice.faces:
            once = localize(D, face)
            self.record('localize_idempotent', face.label(), localize(once, face).region().equals(once.region()))
            self.record('localize_inside', face.label(), once.region().issubset(region))
            for other in lattice.faces:
                composed = localize(once, other).region()
                joined = localize(D, lattice.join(face, other)).region()
                self.record('localize_composition', f"{face.label()}+{other.label()}", composed.equals(joined))
            self.record('translation_invariance', face.label(), self._translation_invariant(once, face))

        components = canonical_decomposition(D)
        print(f"🧩 Canonical decomposition: {len(components)} components "
              f"({', '.join(face.label() for face, _ in components)})")
        for face, component in components:
            found = is_coprimary_downset(component)
            self.record('component_coprimary', face.label(), found == face,
                        detail=f"coprimary for {found.label() if found else None}")

        pruned = prune_redundant(components, D)
        union = Region.empty(D.n, D.mode)
        for _, component in pruned:
            union = union.union(component.region())
        self.record('pruned_union', 'all', union.equals(region),
                    detail=f"{len(components) - len(pruned)} components pruned")

    def _translation_invariant(self, localized, face):
        G = grid_set(self.subject, margin=self.margins[0])
        for point in grid_localize(G, face).points():
            for j in face.char_set:
                for sign in (1, -1):
                    moved = tuple(x + sign if i == j else x for i, x in enumerate(point))
                    if not member(moved, localized):
                        return False
        return True

    # ------------------------------------------------------------------
    # modules
    # ------------------------------------------------------------------

    def check_module_invariants(self):
        """Commutativity, support versus localization, left exactness and decomposition soundness"""
        print("\n" + "=" * 60)
        print("MODULE INVARIANTS")
        print("=" * 60)

        h = self.subject
        M = realize(h)
        self.record('commutativity', 'all', M.check_commutativity())
        print(f"📦 Realized module: total dimension {M.total_dim()} on {h.lo}..{h.hi}")

        lattice = h.hull[0].lattice if h.hull else None
        faces = lattice.faces if lattice else ()
        for face in faces:
            localization = localize_module(M, face)
            for other in faces:
                support_then_localize = global_support_module(M, other).localize(localization, face)
                localize_then_support = global_support_module(localization.module, other)
                self.record('support_localizes', f"{other.label()}@{face.label()}",
                            support_then_localize.equals(localize_then_support))

            if h.generators:
                first = h.generators[0]
                N = Submodule.generated(M, [(first.degree, self._coordinates_of(M, first))])
                inner = global_support_module(N.as_module(), face)
                mapped = Submodule(M, {q: N.bases[q] * inner.bases[q] for q in M.degrees})
                self.record('left_exact', face.label(), mapped.equals(N.intersect(global_support_module(M, face))))

        rng = np.random.default_rng(settings.random_seed)
        decomposition = primary_decomposition_module(h, strict=False)
        self.record('decomposition_injective', 'all', decomposition.injective)
        for component in decomposition.components:
            try:
                verdict = is_coprimary_module(component.quotient, component.face, budget=self.oracle_budget)
                self.record('quotient_coprimary', component.face.label(), verdict)
                if verdict:
                    self.record('elements_divide_coprimary', component.face.label(),
                                self._elements_divide_coprimary(component.quotient, component.face, rng))
            except BoxTooLarge as e:
                self.record('quotient_coprimary', component.face.label(), None, detail=str(e))

    @staticmethod
    def _elements_divide_coprimary(Q, face, rng, draws=3):
        """Random nonzero elements of a coprimary quotient each divide a coprimary element"""
        for q in Q.degrees:
            if not Q.dims[q]:
                continue
            for _ in range(draws):
                v = random_element(Q, q, rng)
                if any(v) and divides_coprimary(Q, q, v, face) is None:
                    return False
        return True

    @staticmethod
    def _coordinates_of(M, generator):
        """The generator as a vector in the realized basis at its degree"""
        return list(linalg.coordinates(M.embedding[generator.degree], linalg.column(generator.coeffs)))

    # ------------------------------------------------------------------
    # reporting
    # ------------------------------------------------------------------

    def save_results(self):
        """Save the result table, the heatmap and the JSON summary"""
        print("\n" + "=" * 60)
        print("SAVING RESULTS")
        print("=" * 60)

        self.results_df = pd.DataFrame(self.results, columns=['check', 'face', 'margin', 'status', 'detail'])
        csv_path = self.session_output_folder / f"check_results_{self.timestamp}.csv"
        self.results_df.to_csv(csv_path, index=False)
        print(f"✅ Results table: {csv_path}")

        scored = self.results_df[self.results_df['status'] != 'skipped'].copy()
        if not scored.empty:
            scored['passed'] = (scored['status'] == 'pass').astype(float)
            pivot = scored.pivot_table(index='check', columns='face', values='passed', aggfunc='mean')
            plt.figure(figsize=(max(6, 0.6 * len(pivot.columns) + 4), max(4, 0.45 * len(pivot.index) + 2)))
            sns.heatmap(pivot, annot=True, fmt='.2f', cmap='RdYlGn', vmin=0, vmax=1, cbar_kws={'label': 'pass rate'})
            plt.title('Invariant checks by face', fontsize=14, fontweight='bold')
            plt.tight_layout()
            plot_path = self.session_plot_folder / f"check_heatmap_{self.timestamp}.png"
            plt.savefig(plot_path, dpi=300, bbox_inches='tight')
            plt.close()
            print(f"📊 Heatmap: {plot_path}")

        counts = self.results_df['status'].value_counts()
        failures = self.results_df[self.results_df['status'] == 'fail']
        self.summary = {
            'input': self.input_name,
            'kind': 'module' if isinstance(self.subject, HullPresentation) else 'downset',
            'checks': int(len(self.results_df)),
            'passed': int(counts.get('pass', 0)),
            'failed': int(counts.get('fail', 0)),
            'skipped': int(counts.get('skipped', 0)),
            'failures': [f"{row.check} [{row.face}] {row.detail}".strip() for row in failures.itertuples()],
        }
        summary_path = self.session_output_folder / f"check_summary_{self.timestamp}.json"
        summary_path.write_text(json.dumps(self.summary, sort_keys=True, indent=2) + "\n", encoding='utf-8')
        self.logger.info(f"Results saved to {self.session_output_folder}")

    def run_complete_check(self):
        """Run the full invariant suite and raise if any check failed"""
        print(f"🚀 Starting invariant check of {self.input_name}...")

        try:
            if isinstance(self.subject, DownsetExpr):
                self.check_oracle_agreement()
                self.check_structure()
            elif isinstance(self.subject, HullPresentation):
                self.check_module_invariants()
            else:
                raise TypeError(f"cannot check objects of type {type(self.subject).__name__}")

            self.save_results()

        except PrimdecompError as e:
            print(f"❌ Error during check: {str(e)}")
            self.logger.error(f"Error during check: {str(e)}")
            raise

        print(f"\n✅ Check finished: {self.summary['passed']} passed, {self.summary['failed']} failed, "
              f"{self.summary['skipped']} skipped")
        print(f"   📁 Logs: {self.session_log_folder}")
        print(f"   📁 Outputs: {self.session_output_folder}")
        print(f"   📁 Plots: {self.session_plot_folder}")

        if self.summary['failed']:
            raise InvariantViolation(f"{self.summary['failed']} invariant checks failed: {self.summary['failures'][:5]}")
        self.logger.info("Invariant check completed successfully")
        return self.summary
