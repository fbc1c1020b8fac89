""" Contains functions not directly linked to bounds or simulation """

from contextlib import contextmanager
import datetime
from itertools import combinations
import time
from typing import Iterable, List

from weightdec.const import Bits


@contextmanager
def output_running_time():
    """ Prints the time elapsed in the context """
    start = int(time.time())
    try:
        yield
    finally:
        end = int(time.time())
        delta = datetime.timedelta(seconds=end - start)
        print(f"Total running time: {delta}")


def inputs_of_weight(n: int, weight: int) -> List[Bits]:
    """ All x in {0,1}^n with |x| = weight, in lexicographic order of the
    positions of their ones """
    result = []
    for ones in combinations(range(n), weight):
        bits = [0] * n
        for i in ones:
            bits[i] = 1
        result.append(tuple(bits))
    return result


def promised_inputs(n: int, weights: Iterable[int]) -> List[Bits]:
    """ All inputs whose weight is one of `weights` """
    return [x for weight in weights for x in inputs_of_weight(n, weight)]
