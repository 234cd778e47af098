# Licensed under the terms of the Apache License, Version 2.0. See the LICENSE file associated with the project for terms.
