from .abstract import AbstractGreens, GreenMode, spherical_wave


class FreeSpaceGreens(AbstractGreens):

    _MODE = GreenMode.FREE_SPACE

    def _evaluate(self, pair):
        return spherical_wave(pair.direct, self.k0)
