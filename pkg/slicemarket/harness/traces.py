"""
Per-round auction traces.
"""
import io

import numpy as np
import pandas as pd

from ..constants import CSV_FLOAT_FORMAT
from ..logs import logger
from ..threads.locks import LOCKS
from ..utils.exceptions import OutputError
from .metrics import SiblingPath


class AuctionTrace(object):
    """
    Collects the state of every auction round.  Pass it as the trace of
    RunAuction, then Write it.

    The slice table has one row per (round, slice, area): the area's
    traffic x_{n,l} after the round, the cheapest path cost the round's
    best response saw and the area's payment w_{n,l} in that round.  The
    price table has one row per (round, node, resource).
    """
    def __init__(self, label=""):
        self.label = label
        self.iterations = []
        self.xArea = []
        self.minCosts = []
        self.payments = []
        self.mu = []
        self.eta = []
        self.index = None

    def Record(self, iteration, auction):
        """
        Called by DrpAuction after each round.
        """
        index = auction.index
        self.index = index
        self.iterations.append(iteration)
        self.xArea.append(index.GroupSum(auction.x))
        self.minCosts.append(index.GroupMin(
            np.asarray(auction.lastCosts, dtype=float)))
        self.payments.append(
            np.asarray(auction.lastAreaPayments, dtype=float).copy())
        self.mu.append(auction.mu.copy())
        self.eta.append(auction.eta.copy())

    def __len__(self):
        return len(self.iterations)

    def SliceTable(self):
        """
        DataFrame: iteration, slice, area, x, min_path_cost, w
        """
        columns = ["iteration", "slice", "area", "x", "min_path_cost", "w"]
        if not self.iterations or self.index.numGroups == 0:
            return pd.DataFrame([], columns=columns)
        index = self.index
        rounds = len(self.iterations)
        return pd.DataFrame(dict([
            ("iteration", np.repeat(self.iterations, index.numGroups)),
            ("slice", np.tile([sliceId for sliceId, _ in index.groupKeys],
                              rounds)),
            ("area", np.tile([area for _, area in index.groupKeys], rounds)),
            ("x", np.concatenate(self.xArea)),
            ("min_path_cost", np.concatenate(self.minCosts)),
            ("w", np.concatenate(self.payments))]), columns=columns)

    def PriceTable(self):
        """
        DataFrame: iteration, node, resource, mu, eta
        """
        columns = ["iteration", "node", "resource", "mu", "eta"]
        if not self.iterations or self.index.numKeys == 0:
            return pd.DataFrame([], columns=columns)
        index = self.index
        rounds = len(self.iterations)
        return pd.DataFrame(dict([
            ("iteration", np.repeat(self.iterations, index.numKeys)),
            ("node", np.tile([key[0] for key in index.keys], rounds)),
            ("resource", np.tile([key[1] for key in index.keys], rounds)),
            ("mu", np.concatenate(self.mu)),
            ("eta", np.concatenate(self.eta))]), columns=columns)

    def Write(self, path):
        """
        Slice table to path, price table to <stem>.prices.csv.
        """
        pricesPath = SiblingPath(path, "prices")
        with LOCKS.emitTrace:
            for table, destination in ((self.SliceTable(), path),
                                       (self.PriceTable(), pricesPath)):
                try:
                    with io.open(destination, "w", encoding="utf-8",
                                 newline="") as csvFile:
                        table.to_csv(csvFile, index=False,
                                     float_format=CSV_FLOAT_FORMAT,
                                     lineterminator="\n")
                except (IOError, OSError) as err:
                    raise OutputError("Couldn't write trace %s: %s"
                                      % (destination, err), destination)
        logger.info("Wrote %d auction rounds to %s and %s"
                    % (len(self), path, pricesPath))
