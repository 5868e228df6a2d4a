"""Server-side state machine: collect, flag-resolve, verify, aggregate.

The server never learns an individual update: it checks structure and
proofs, then opens only the sum of the surviving clients' commitments,
recovering the aggregate blind from the homomorphically-combined Shamir
shares and peeling each coordinate with a bounded discrete log.
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

from ..commit import CommitmentBundle, aggregate_commitments
from ..group.base import GROUP_ORDER, Point
from ..group.dlog import DlogNotFoundError, amortized_table, dlog_bounded
from ..group.generators import GeneratorSet
from ..group.multiexp import multiexp
from ..rng import Rng
from ..sampling import CheckParameters, SampleMatrix, derive_seed, sample_matrix
from ..vsss import (
    InsufficientSharesError,
    Share,
    combine_check_strings,
    ss_recover,
    ss_verify,
)
from ..zkp import IntegrityProof, ver_integrity_proof
from .errors import DlogOutOfRangeError, ShareVerifyFailedError

_Q = GROUP_ORDER


class Server:
    def __init__(self, params: CheckParameters, gens: GeneratorSet, rng: Rng) -> None:
        self.params = params
        self.gens = gens
        self.rng = rng
        self.client_pks: dict[int, Point] = {}
        self.round_no = 0
        self._reset_round_state()

    def _reset_round_state(self) -> None:
        self.bundles: dict[int, CommitmentBundle] = {}
        self.malicious: dict[int, str] = {}
        self.exposure: dict[int, int] = {}
        self.cleared_shares: dict[int, list[Share]] = {}
        self.honest: list[int] = []
        self.proof_reasons: dict[int, str] = {}
        self.seed: bytes = b""
        self.matrix: Optional[SampleMatrix] = None
        self.h: list[Point] = []

    def register_clients(self, pks: Mapping[int, Point]) -> None:
        if sorted(pks) != list(range(1, self.params.n + 1)):
            raise ValueError("registry must list clients 1..n")
        self.client_pks = dict(pks)

    def begin_round(self, round_no: int) -> None:
        self.round_no = round_no
        self._reset_round_state()

    def _mark(self, client_id: int, reason: str) -> None:
        self.malicious.setdefault(client_id, reason)

    @property
    def surviving(self) -> list[int]:
        return [
            i for i in range(1, self.params.n + 1) if i not in self.malicious
        ]

    # -- stage 1 -------------------------------------------------------------

    def receive_bundles(
        self, bundles: Mapping[int, Optional[CommitmentBundle]]
    ) -> None:
        """Structural validation; silence or malformed shape is flagged."""
        p = self.params
        for i in range(1, p.n + 1):
            bundle = bundles.get(i)
            if bundle is None:
                self._mark(i, "no_commitment")
                continue
            if (
                len(bundle.y) != p.d
                or len(bundle.encrypted_shares) != p.n
                or len(bundle.check_string.points) != p.threshold
                or bundle.z != bundle.check_string.points[0]
            ):
                self._mark(i, "malformed_bundle")
                continue
            self.bundles[i] = bundle

    # -- stage 2 -------------------------------------------------------------

    def resolve_flags(
        self, flags: Mapping[int, Optional[Sequence[int]]]
    ) -> dict[int, list[int]]:
        """Apply the two flag rules; returns clear-share requests
        (target -> flaggers) for clients flagged by 1..m peers."""
        m = self.params.m
        live = set(self.surviving)
        reports: dict[int, set[int]] = {}
        for i in live:
            report = flags.get(i)
            if report is None:
                self._mark(i, "no_flag_report")
                continue
            reports[i] = {j for j in report if j != i}

        # Rule 1a: flagging more than m peers is self-incriminating.
        for i, flagged in reports.items():
            if len(flagged) > m:
                self._mark(i, "over_flagging")
        live = set(self.surviving)

        # Rule 1b: flagged by more than m (credible) peers.
        counts: dict[int, set[int]] = {}
        for i, flagged in reports.items():
            if i not in live:
                continue  # discard flags from rule-1a offenders
            for j in flagged:
                if j in live:
                    counts.setdefault(j, set()).add(i)
        for j, flaggers in counts.items():
            if len(flaggers) > m:
                self._mark(j, "flagged_by_majority")

        # Rule 2: the rest must prove their dealt shares were genuine.
        requests: dict[int, list[int]] = {}
        live = set(self.surviving)
        for j, flaggers in counts.items():
            if j not in live:
                continue
            active = sorted(f for f in flaggers if f in live)
            if active:
                requests[j] = active
                self.exposure[j] = len(active)
        return requests

    def receive_clear_shares(
        self,
        requests: Mapping[int, Sequence[int]],
        responses: Mapping[int, Optional[Sequence[Share]]],
    ) -> dict[int, list[Share]]:
        """Verify revealed shares against the dealer's check string.

        Returns verified shares to forward back to the flaggers, so an
        honest flagger regains the share a lying accusation claimed was
        bad (or that a glitchy ciphertext lost)."""
        forward: dict[int, list[Share]] = {}
        for target, flaggers in requests.items():
            response = responses.get(target)
            if response is None:
                self._mark(target, "no_clear_shares")
                continue
            check = self.bundles[target].check_string
            by_index = {sh.index: sh for sh in response}
            if sorted(by_index) != sorted(flaggers) or not all(
                ss_verify(by_index[f], check) for f in flaggers
            ):
                self._mark(target, "bad_clear_share")
                continue
            forward[target] = [by_index[f] for f in flaggers]
            self.cleared_shares[target] = forward[target]
        return forward

    # -- stage 3 -------------------------------------------------------------

    def proof_round(self) -> tuple[bytes, list[Point]]:
        """Pick the round nonce, derive the matrix, publish h."""
        self.seed_nonce = self.rng.take(32)
        ordered = [self.client_pks[i] for i in sorted(self.client_pks)]
        self.seed = derive_seed(self.seed_nonce, ordered)
        p = self.params
        self.matrix = sample_matrix(self.seed, p.k, p.d, p.M)
        rows = [[a % _Q for a in self.matrix.a0]] + [
            [int(x) % _Q for x in row] for row in self.matrix.rows
        ]
        self.h = [multiexp(self.gens.w, row) for row in rows]
        return self.seed_nonce, list(self.h)

    def receive_proofs(
        self, proofs: Mapping[int, Optional[IntegrityProof]]
    ) -> list[int]:
        """Verify every surviving client's proof; build the honest set."""
        assert self.matrix is not None, "proof_round must run first"
        honest = []
        for i in self.surviving:
            proof = proofs.get(i)
            if proof is None:
                self._mark(i, "no_proof")
                continue
            bundle = self.bundles[i]
            ok, reason = ver_integrity_proof(
                self.params,
                self.gens,
                self.matrix,
                self.h,
                bundle.z,
                bundle.y,
                proof,
                self.rng,
            )
            if not ok:
                self.proof_reasons[i] = reason or "unknown"
                self._mark(i, f"proof_{reason}")
                continue
            honest.append(i)
        self.honest = honest
        return list(honest)

    # -- stage 4 -------------------------------------------------------------

    def aggregate(self, r_primes: Mapping[int, Optional[int]]) -> list[int]:
        """Open the sum of honest commitments.

        Each responding client i supplies r'_i = sum of its received
        shares over H, i.e. a share (at index i) of the combined blind;
        t of them recover it.  Coordinates come back through a bounded
        discrete log sized to |H| full-width updates."""
        p = self.params
        if not self.honest:
            return [0] * p.d
        combined = combine_check_strings(
            [self.bundles[i].check_string for i in self.honest]
        )
        valid: list[Share] = []
        for i, value in r_primes.items():
            if value is None:
                continue
            share = Share(index=i, value=value % _Q)
            if not ss_verify(share, combined):
                raise ShareVerifyFailedError(i)
            valid.append(share)
        if len(valid) < p.threshold:
            raise InsufficientSharesError(
                f"{len(valid)} aggregated shares, need {p.threshold}"
            )
        blind = ss_recover(valid, p.threshold)

        totals = aggregate_commitments(
            [self.bundles[i].y for i in self.honest], self.gens
        )
        bound = len(self.honest) * ((1 << p.b_coord) - 1)
        table = amortized_table(self.gens.g, bound, n_solves=p.d)
        out = []
        for l, (y_l, w_l) in enumerate(zip(totals, self.gens.w)):
            target = y_l - blind * w_l
            try:
                out.append(dlog_bounded(target, self.gens.g, bound, table=table))
            except DlogNotFoundError:
                raise DlogOutOfRangeError(l) from None
        return out
