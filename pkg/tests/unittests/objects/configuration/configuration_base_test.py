import os
import unittest
from unittest.mock import patch

from src.objects.configuration import CONFIG_ENV_VAR


class ConfigurationBaseTest(unittest.TestCase):
    def setUp(self):
        self.env = patch.dict(os.environ, {}, clear=False)
        self.env.start()
        os.environ.pop(CONFIG_ENV_VAR, None)

    def tearDown(self):
        patch.stopall()
