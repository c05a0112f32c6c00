import asyncio


async def fetch_data(client, url, retries=3):
    for _ in range(retries):
        response = await client.get(url)
        if response.ok:
            return response.body
    raise TimeoutError(url)


class Worker:
    async def run(self, queue):
        while True:
            item = await queue.get()
            if item is None:
                break
            await asyncio.sleep(0)
